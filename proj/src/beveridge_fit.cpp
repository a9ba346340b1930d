#include "bevcurve/beveridge_fit.hpp"

#include "bevcurve/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace bevcurve::fit {

namespace {

struct LogPoints {
	std::vector<double> x; // log u
	std::vector<double> y; // log v
};

LogPoints log_points(const PairedSeries &pairs) {
	LogPoints lp;
	lp.x.reserve(pairs.size());
	lp.y.reserve(pairs.size());
	for (const auto &o : pairs.observations()) {
		lp.x.push_back(std::log(o.u));
		lp.y.push_back(std::log(o.v));
	}
	return lp;
}

struct LineFit {
	double slope;
	double intercept;
	double ssr;
	bool singular;
};

// Two-pass centered least squares over [first, last).
LineFit fit_line(const LogPoints &lp, std::size_t first, std::size_t last) {
	const auto n = static_cast<double>(last - first);
	double mx = 0.0;
	double my = 0.0;
	for (std::size_t i = first; i < last; ++i) {
		mx += lp.x[i];
		my += lp.y[i];
	}
	mx /= n;
	my /= n;
	double sxx = 0.0;
	double sxy = 0.0;
	double syy = 0.0;
	for (std::size_t i = first; i < last; ++i) {
		const double dx = lp.x[i] - mx;
		const double dy = lp.y[i] - my;
		sxx += dx * dx;
		sxy += dx * dy;
		syy += dy * dy;
	}
	const double scale = std::max(1.0, std::abs(mx));
	if (sxx <= 1e-24 * scale * scale * n) {
		return {0.0, my, syy, true};
	}
	const double slope = sxy / sxx;
	const double intercept = my - slope * mx;
	double ssr = 0.0;
	for (std::size_t i = first; i < last; ++i) {
		const double r = lp.y[i] - intercept - slope * lp.x[i];
		ssr += r * r;
	}
	return {slope, intercept, ssr, false};
}

Segment make_segment(const PairedSeries &pairs, const LogPoints &lp, std::size_t first, std::size_t last) {
	const auto f = fit_line(lp, first, last);
	return {DateRange(pairs[first].period, pairs[last - 1].period), f.slope, f.intercept, f.ssr, last - first,
	        first, last};
}

double round_to(double x, int decimals) {
	const double scale = std::pow(10.0, decimals);
	return std::round(x * scale) / scale;
}

} // namespace

Segment log_ols(const PairedSeries &pairs, const DateRange &r) {
	const auto [first, last] = pairs.index_range(r);
	if (last - first < 3) {
		throw Error(ErrorKind::EmptyWindow,
		            fmt::format("log_ols: {} observations in {}, need at least 3", last - first, r.str()));
	}
	const auto lp = log_points(pairs);
	const auto f = fit_line(lp, first, last);
	if (f.singular) {
		throw Error(ErrorKind::SingularFit, fmt::format("log_ols: unemployment rate is constant over {}", r.str()));
	}
	return {DateRange(pairs[first].period, pairs[last - 1].period), f.slope, f.intercept, f.ssr, last - first,
	        first, last};
}

std::size_t min_segment_length(std::size_t n, double fraction) {
	if (!(fraction > 0.0) || fraction > 1.0) {
		throw Error(ErrorKind::DomainError, fmt::format("minimum segment fraction {} outside (0, 1]", fraction));
	}
	// Guard against 0.1 * 270 landing a hair above 27.
	const double raw = static_cast<double>(n) * fraction;
	return static_cast<std::size_t>(std::ceil(raw - 1e-9));
}

BreakSearch detect_breaks(const PairedSeries &pairs, std::size_t max_breaks, std::size_t min_seg) {
	const std::size_t n = pairs.size();
	if (min_seg < 3) {
		throw Error(ErrorKind::InfeasiblePartition, fmt::format("minimum segment length {} is below 3", min_seg));
	}
	if (n < (max_breaks + 1) * min_seg) {
		throw Error(ErrorKind::InfeasiblePartition,
		            fmt::format("{} observations cannot hold {} segments of at least {}", n, max_breaks + 1, min_seg));
	}

	const auto lp = log_points(pairs);

	// ssr[i][j]: residual sum of squares of the window [i, j), admissible
	// when j - i >= min_seg.
	const double inf = std::numeric_limits<double>::infinity();
	std::vector<std::vector<double>> ssr(n, std::vector<double>(n + 1, inf));
	for (std::size_t i = 0; i + min_seg <= n; ++i) {
		for (std::size_t j = i + min_seg; j <= n; ++j) {
			ssr[i][j] = fit_line(lp, i, j).ssr;
		}
	}

	// cost[k][j]: best SSR of the prefix [0, j) split into k + 1 segments;
	// arg[k][j]: start of the last segment in that optimum.
	std::vector<std::vector<double>> cost(max_breaks + 1, std::vector<double>(n + 1, inf));
	std::vector<std::vector<std::size_t>> arg(max_breaks + 1, std::vector<std::size_t>(n + 1, 0));
	for (std::size_t j = min_seg; j <= n; ++j) {
		cost[0][j] = ssr[0][j];
	}
	for (std::size_t k = 1; k <= max_breaks; ++k) {
		for (std::size_t j = (k + 1) * min_seg; j <= n; ++j) {
			for (std::size_t i = k * min_seg; i + min_seg <= j; ++i) {
				const double c = cost[k - 1][i] + ssr[i][j];
				if (c < cost[k][j]) {
					cost[k][j] = c;
					arg[k][j] = i;
				}
			}
		}
	}

	BreakSearch out{n, min_seg, {}};
	for (std::size_t k = 0; k <= max_breaks; ++k) {
		std::vector<std::size_t> breaks(k);
		std::size_t end = n;
		for (std::size_t kk = k; kk > 0; --kk) {
			end = arg[kk][end];
			breaks[kk - 1] = end;
		}
		Partition p{k, breaks, {}, {}, cost[k][n]};
		std::size_t first = 0;
		for (std::size_t b : breaks) {
			p.break_dates.push_back(pairs[b].period);
			p.segments.push_back(make_segment(pairs, lp, first, b));
			first = b;
		}
		p.segments.push_back(make_segment(pairs, lp, first, n));
		out.by_breaks.push_back(std::move(p));
	}
	return out;
}

double bic(std::size_t n, double ssr, std::size_t num_breaks, double scale) {
	const double nn = static_cast<double>(n);
	const double floor = std::max(scale * 1e-12, std::numeric_limits<double>::min());
	const double params = 3.0 * static_cast<double>(num_breaks) + 2.0;
	return nn * std::log(std::max(ssr, floor) / nn) + params * std::log(nn);
}

BeveridgeFit select_num_breaks(const BreakSearch &results) {
	if (results.by_breaks.empty()) {
		throw Error(ErrorKind::EmptySeries, "select_num_breaks: no candidate partitions");
	}
	// The zero-break SSR is the scale reference for the exact-fit floor.
	const double scale = results.by_breaks.front().ssr;
	BeveridgeFit fit{{}, {}, 0, std::numeric_limits<double>::infinity(), {}};
	std::size_t best = 0;
	for (const auto &p : results.by_breaks) {
		const double score = bic(results.n, p.ssr, p.num_breaks, scale);
		fit.bic_path.push_back({p.num_breaks, p.ssr, score});
		if (score < fit.selection_score) {
			fit.selection_score = score;
			best = p.num_breaks;
		}
	}
	const auto &chosen = results.by_breaks[best];
	fit.segments = chosen.segments;
	fit.break_dates = chosen.break_dates;
	fit.num_breaks = chosen.num_breaks;
	return fit;
}

HyperbolaConstant hyperbola_constant(const PairedSeries &pairs, const DateRange &r) {
	const auto [first, last] = pairs.index_range(r);
	if (first == last) {
		throw Error(ErrorKind::EmptyWindow, fmt::format("hyperbola_constant: no observations in {}", r.str()));
	}
	const auto n = static_cast<double>(last - first);
	double mean = 0.0;
	for (std::size_t i = first; i < last; ++i) {
		mean += std::log(pairs[i].u) + std::log(pairs[i].v);
	}
	mean /= n;
	double var = 0.0;
	for (std::size_t i = first; i < last; ++i) {
		const double d = std::log(pairs[i].u) + std::log(pairs[i].v) - mean;
		var += d * d;
	}
	return {std::exp(mean), std::sqrt(var / n)};
}

double matching_elasticity(double eps, double u) {
	if (!(eps > 0.0) || !std::isfinite(eps)) {
		throw Error(ErrorKind::DomainError, fmt::format("Beveridge elasticity magnitude must be positive, got {}", eps));
	}
	if (!(u > 0.0) || !(u < 1.0)) {
		throw Error(ErrorKind::DomainError, fmt::format("unemployment rate {} outside (0, 1)", u));
	}
	return (eps - u / (1.0 - u)) / (1.0 + eps);
}

nlohmann::json to_json(const BeveridgeFit &fit) {
	nlohmann::json segs = nlohmann::json::array();
	for (const auto &s : fit.segments) {
		segs.push_back({
			{"start", s.range.start.label()},
			{"end", s.range.end.label()},
			{"n", s.n},
			{"elasticity", round_to(s.elasticity, 4)},
			{"intercept", round_to(s.intercept, 4)},
			{"ssr", round_to(s.ssr, 6)},
		});
	}
	nlohmann::json dates = nlohmann::json::array();
	for (const auto &d : fit.break_dates) {
		dates.push_back(d.label());
	}
	nlohmann::json path = nlohmann::json::array();
	for (const auto &b : fit.bic_path) {
		path.push_back({{"num_breaks", b.num_breaks}, {"ssr", round_to(b.ssr, 6)}, {"bic", round_to(b.bic, 4)}});
	}
	return {
		{"num_breaks", fit.num_breaks},
		{"break_dates", dates},
		{"selection_score", round_to(fit.selection_score, 4)},
		{"segments", segs},
		{"bic_path", path},
	};
}

} // namespace bevcurve::fit
