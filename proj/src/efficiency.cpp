#include "bevcurve/efficiency.hpp"

#include "bevcurve/error.hpp"

#include <cmath>
#include <fmt/format.h>

namespace bevcurve::efficiency {

namespace {

void require_positive(double u, double v) {
	if (!(u > 0.0) || !(v > 0.0) || !std::isfinite(u) || !std::isfinite(v)) {
		throw Error(ErrorKind::DomainError, fmt::format("rates must be positive and finite (u={}, v={})", u, v));
	}
}

template <typename Field>
TimeSeries column(std::span<const EfficiencyPoint> points, Frequency freq, ValueKind kind, const char *label,
                  Field field) {
	std::vector<Observation> obs;
	obs.reserve(points.size());
	for (const auto &p : points) {
		obs.push_back({p.period, field(p)});
	}
	return {freq, kind, label, std::move(obs)};
}

} // namespace

std::string_view to_string(MarketState s) {
	switch (s) {
	case MarketState::Slack: return "slack";
	case MarketState::Tight: return "tight";
	case MarketState::Efficient: return "efficient";
	}
	return "slack";
}

double efficient_rate(double u, double v) {
	require_positive(u, v);
	return std::sqrt(u * v);
}

double tightness(double u, double v) {
	if (!(u > 0.0) || !std::isfinite(u) || !std::isfinite(v) || v < 0.0) {
		throw Error(ErrorKind::DomainError, fmt::format("tightness needs u > 0 and v >= 0 (u={}, v={})", u, v));
	}
	return v / u;
}

double gap(double u, double v) {
	return u - efficient_rate(u, v);
}

MarketState classify(double u, double v, double tol) {
	require_positive(u, v);
	if (!(tol >= 0.0)) {
		throw Error(ErrorKind::DomainError, "classification tolerance must be >= 0");
	}
	if (std::abs(v - u) <= tol) {
		return MarketState::Efficient;
	}
	return v > u ? MarketState::Tight : MarketState::Slack;
}

std::vector<EfficiencyPoint> analyze(const PairedSeries &series, double tol) {
	if (series.empty()) {
		throw Error(ErrorKind::EmptySeries, "analyze: empty series");
	}
	std::vector<EfficiencyPoint> out;
	out.reserve(series.size());
	for (const auto &o : series.observations()) {
		const double u_star = efficient_rate(o.u, o.v);
		out.push_back({o.period, o.u, o.v, u_star, tightness(o.u, o.v), o.u - u_star, classify(o.u, o.v, tol)});
	}
	return out;
}

std::vector<Episode> episodes(std::span<const EfficiencyPoint> points) {
	if (points.empty()) {
		throw Error(ErrorKind::EmptySeries, "episodes: no points");
	}
	std::vector<Episode> out;
	std::size_t start = 0;
	while (start < points.size()) {
		std::size_t end = start;
		const auto state = points[start].state;
		std::size_t best = start;
		while (end + 1 < points.size() && points[end + 1].state == state) {
			++end;
			const bool better = state == MarketState::Tight ? points[end].theta > points[best].theta
			                  : state == MarketState::Slack ? points[end].theta < points[best].theta
			                                                : false;
			if (better) {
				best = end;
			}
		}
		out.push_back({state, DateRange(points[start].period, points[end].period), points[best].period,
		               points[best].theta});
		start = end + 1;
	}
	return out;
}

TimeSeries u_star_series(std::span<const EfficiencyPoint> points, Frequency freq) {
	return column(points, freq, ValueKind::Rate, "u_star", [](const EfficiencyPoint &p) { return p.u_star; });
}

TimeSeries theta_series(std::span<const EfficiencyPoint> points, Frequency freq) {
	return column(points, freq, ValueKind::Real, "theta", [](const EfficiencyPoint &p) { return p.theta; });
}

TimeSeries gap_series(std::span<const EfficiencyPoint> points, Frequency freq) {
	return column(points, freq, ValueKind::Real, "gap", [](const EfficiencyPoint &p) { return p.gap; });
}

} // namespace bevcurve::efficiency
