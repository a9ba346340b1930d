#include "bevcurve/series.hpp"

#include "bevcurve/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace bevcurve {

std::string_view to_string(ValueKind k) {
	switch (k) {
	case ValueKind::Rate: return "rate";
	case ValueKind::Count: return "count";
	case ValueKind::Real: return "real";
	}
	return "real";
}

namespace {

void check_increasing(Frequency freq, const Period &prev, const Period &cur) {
	if (cur.frequency() != freq) {
		throw Error(ErrorKind::FrequencyMismatch,
		            fmt::format("period {} does not match series frequency {}", cur.label(), to_string(freq)));
	}
	if (!(prev < cur)) {
		throw Error(ErrorKind::InvalidSeries,
		            fmt::format("periods not strictly increasing at {} (after {})", cur.label(), prev.label()));
	}
}

} // namespace

TimeSeries::TimeSeries(Frequency freq, ValueKind kind, std::string label, std::vector<Observation> obs,
                       std::vector<Period> partial, std::vector<ProvenanceEntry> provenance)
	: freq_(freq), kind_(kind), label_(std::move(label)), obs_(std::move(obs)), partial_(std::move(partial)),
	  provenance_(std::move(provenance)) {
	for (std::size_t i = 0; i < obs_.size(); ++i) {
		const auto &o = obs_[i];
		if (i == 0) {
			if (o.period.frequency() != freq_) {
				throw Error(ErrorKind::FrequencyMismatch,
				            fmt::format("period {} does not match series frequency", o.period.label()));
			}
		} else {
			check_increasing(freq_, obs_[i - 1].period, o.period);
		}
		if (!std::isfinite(o.value)) {
			throw Error(ErrorKind::InvalidSeries, fmt::format("{}: non-finite value at {}", label_, o.period.label()));
		}
		if (kind_ == ValueKind::Rate && (o.value < 0.0 || o.value >= 1.0)) {
			throw Error(ErrorKind::InvalidSeries,
			            fmt::format("{}: rate {} at {} outside [0, 1)", label_, o.value, o.period.label()));
		}
		if (kind_ == ValueKind::Count && o.value < 0.0) {
			throw Error(ErrorKind::InvalidSeries,
			            fmt::format("{}: negative count {} at {}", label_, o.value, o.period.label()));
		}
	}
	for (const auto &p : partial_) {
		if (p.frequency() != freq_) {
			throw Error(ErrorKind::FrequencyMismatch, "partial-period flag with wrong frequency");
		}
	}
	std::sort(partial_.begin(), partial_.end());
}

bool TimeSeries::is_partial(const Period &p) const {
	return std::binary_search(partial_.begin(), partial_.end(), p);
}

std::optional<double> TimeSeries::at(const Period &p) const {
	auto it = std::lower_bound(obs_.begin(), obs_.end(), p,
	                           [](const Observation &o, const Period &q) { return o.period < q; });
	if (it == obs_.end() || !(it->period == p)) {
		return std::nullopt;
	}
	return it->value;
}

TimeSeries TimeSeries::restrict(const DateRange &r) const {
	if (r.frequency() != freq_) {
		throw Error(ErrorKind::FrequencyMismatch, "restrict: range frequency differs from series");
	}
	std::vector<Observation> kept;
	for (const auto &o : obs_) {
		if (r.contains(o.period)) {
			kept.push_back(o);
		}
	}
	std::vector<Period> partial;
	for (const auto &p : partial_) {
		if (r.contains(p)) {
			partial.push_back(p);
		}
	}
	std::vector<ProvenanceEntry> prov;
	for (const auto &e : provenance_) {
		if (e.range.end < r.start || r.end < e.range.start) {
			continue;
		}
		prov.push_back({DateRange(std::max(e.range.start, r.start), std::min(e.range.end, r.end)), e.label});
	}
	return {freq_, kind_, label_, std::move(kept), std::move(partial), std::move(prov)};
}

TimeSeries TimeSeries::relabel(std::string label) const {
	return {freq_, kind_, std::move(label), obs_, partial_, provenance_};
}

PairedSeries::PairedSeries(Frequency freq, std::vector<PairedObservation> obs, std::vector<Period> partial)
	: freq_(freq), obs_(std::move(obs)), partial_(std::move(partial)) {
	for (std::size_t i = 0; i < obs_.size(); ++i) {
		const auto &o = obs_[i];
		if (i == 0) {
			if (o.period.frequency() != freq_) {
				throw Error(ErrorKind::FrequencyMismatch, "paired observation frequency mismatch");
			}
		} else {
			check_increasing(freq_, obs_[i - 1].period, o.period);
		}
		if (!(o.u > 0.0) || !(o.v > 0.0) || !std::isfinite(o.u) || !std::isfinite(o.v)) {
			throw Error(ErrorKind::DomainError,
			            fmt::format("paired rates must be positive and finite at {} (u={}, v={})",
			                        o.period.label(), o.u, o.v));
		}
	}
	std::sort(partial_.begin(), partial_.end());
}

std::pair<std::size_t, std::size_t> PairedSeries::index_range(const DateRange &r) const {
	if (r.frequency() != freq_) {
		throw Error(ErrorKind::FrequencyMismatch, "range frequency differs from paired series");
	}
	auto lo = std::lower_bound(obs_.begin(), obs_.end(), r.start,
	                           [](const PairedObservation &o, const Period &p) { return o.period < p; });
	auto hi = std::upper_bound(obs_.begin(), obs_.end(), r.end,
	                           [](const Period &p, const PairedObservation &o) { return p < o.period; });
	return {static_cast<std::size_t>(lo - obs_.begin()), static_cast<std::size_t>(hi - obs_.begin())};
}

PairedSeries PairedSeries::restrict(const DateRange &r) const {
	const auto [first, last] = index_range(r);
	std::vector<PairedObservation> kept(obs_.begin() + static_cast<std::ptrdiff_t>(first),
	                                    obs_.begin() + static_cast<std::ptrdiff_t>(last));
	std::vector<Period> partial;
	for (const auto &p : partial_) {
		if (r.contains(p)) {
			partial.push_back(p);
		}
	}
	return {freq_, std::move(kept), std::move(partial)};
}

TimeSeries PairedSeries::u_series() const {
	std::vector<Observation> out;
	out.reserve(obs_.size());
	for (const auto &o : obs_) {
		out.push_back({o.period, o.u});
	}
	return {freq_, ValueKind::Rate, "u", std::move(out), partial_};
}

TimeSeries PairedSeries::v_series() const {
	std::vector<Observation> out;
	out.reserve(obs_.size());
	for (const auto &o : obs_) {
		out.push_back({o.period, o.v});
	}
	return {freq_, ValueKind::Rate, "v", std::move(out), partial_};
}

TimeSeries monthly_to_quarterly(const TimeSeries &s) {
	if (s.empty()) {
		throw Error(ErrorKind::EmptySeries, fmt::format("{}: cannot aggregate an empty series", s.label()));
	}
	if (s.frequency() != Frequency::Monthly) {
		throw Error(ErrorKind::FrequencyMismatch, fmt::format("{}: expected a monthly series", s.label()));
	}

	std::vector<Observation> out;
	std::vector<Period> partial;
	const auto obs = s.observations();
	std::size_t i = 0;
	while (i < obs.size()) {
		const Period q = obs[i].period.quarter();
		double sum = 0.0;
		int months = 0;
		bool inherited_partial = false;
		while (i < obs.size() && obs[i].period.quarter() == q) {
			sum += obs[i].value;
			inherited_partial = inherited_partial || s.is_partial(obs[i].period);
			++months;
			++i;
		}
		out.push_back({q, sum / months});
		if (months < 3 || inherited_partial) {
			partial.push_back(q);
		}
	}

	std::vector<ProvenanceEntry> prov;
	for (const auto &e : s.provenance()) {
		prov.push_back({DateRange(e.range.start.quarter(), e.range.end.quarter()), e.label});
	}
	return {Frequency::Quarterly, s.kind(), s.label(), std::move(out), std::move(partial), std::move(prov)};
}

TimeSeries splice(std::span<const std::pair<DateRange, TimeSeries>> segments) {
	if (segments.empty()) {
		throw Error(ErrorKind::EmptySeries, "splice: no segments");
	}
	const Frequency freq = segments.front().second.frequency();
	const ValueKind kind = segments.front().second.kind();

	std::vector<Observation> out;
	std::vector<Period> partial;
	std::vector<ProvenanceEntry> prov;
	std::string label;
	for (std::size_t k = 0; k < segments.size(); ++k) {
		const auto &[range, series] = segments[k];
		if (series.frequency() != freq || range.frequency() != freq) {
			throw Error(ErrorKind::FrequencyMismatch,
			            fmt::format("splice: segment {} ({}) has a different frequency", k, series.label()));
		}
		if (k > 0 && !(segments[k - 1].first.end < range.start)) {
			throw Error(ErrorKind::SpliceOverlap,
			            fmt::format("splice: range {} overlaps or precedes {}", range.str(),
			                        segments[k - 1].first.str()));
		}
		const auto part = series.restrict(range);
		out.insert(out.end(), part.observations().begin(), part.observations().end());
		partial.insert(partial.end(), part.partial_periods().begin(), part.partial_periods().end());
		prov.push_back({range, series.label()});
		if (!label.empty()) {
			label += " + ";
		}
		label += fmt::format("{}[{}]", series.label(), range.str());
	}
	return {freq, kind, std::move(label), std::move(out), std::move(partial), std::move(prov)};
}

AlignResult align(const TimeSeries &u, const TimeSeries &v) {
	if (u.frequency() != v.frequency()) {
		throw Error(ErrorKind::FrequencyMismatch,
		            fmt::format("align: {} is {} but {} is {}", u.label(), to_string(u.frequency()), v.label(),
		                        to_string(v.frequency())));
	}
	std::vector<PairedObservation> out;
	std::vector<Period> partial;
	std::size_t matched = 0;
	std::size_t dropped = 0;
	const auto uo = u.observations();
	const auto vo = v.observations();
	std::size_t i = 0;
	std::size_t j = 0;
	while (i < uo.size() && j < vo.size()) {
		if (uo[i].period < vo[j].period) {
			++i;
		} else if (vo[j].period < uo[i].period) {
			++j;
		} else {
			++matched;
			if (uo[i].value > 0.0 && vo[j].value > 0.0) {
				out.push_back({uo[i].period, uo[i].value, vo[j].value});
				if (u.is_partial(uo[i].period) || v.is_partial(vo[j].period)) {
					partial.push_back(uo[i].period);
				}
			} else {
				++dropped;
			}
			++i;
			++j;
		}
	}
	if (matched == 0) {
		throw Error(ErrorKind::NoOverlap, fmt::format("align: {} and {} share no periods", u.label(), v.label()));
	}
	if (out.empty()) {
		throw Error(ErrorKind::NoOverlap, "align: every shared period has a non-positive rate");
	}
	return {PairedSeries(u.frequency(), std::move(out), std::move(partial)), dropped};
}

SummaryStats summary(const TimeSeries &s, const DateRange &r) {
	if (r.frequency() != s.frequency()) {
		throw Error(ErrorKind::FrequencyMismatch, "summary: range frequency differs from series");
	}
	std::optional<SummaryStats> acc;
	double sum = 0.0;
	for (const auto &o : s.observations()) {
		if (!r.contains(o.period)) {
			continue;
		}
		sum += o.value;
		if (!acc) {
			acc = SummaryStats{0.0, {o.value, o.period}, {o.value, o.period}, 1};
			continue;
		}
		++acc->count;
		// Strict comparisons keep the earliest period on ties.
		if (o.value < acc->min.value) {
			acc->min = {o.value, o.period};
		}
		if (o.value > acc->max.value) {
			acc->max = {o.value, o.period};
		}
	}
	if (!acc) {
		throw Error(ErrorKind::EmptyWindow, fmt::format("summary: no observations of {} in {}", s.label(), r.str()));
	}
	acc->mean = sum / static_cast<double>(acc->count);
	// Rounding in the running sum can push a constant series' mean one ulp out.
	acc->mean = std::clamp(acc->mean, acc->min.value, acc->max.value);
	return *acc;
}

SummaryStats summary(const TimeSeries &s) {
	if (s.empty()) {
		throw Error(ErrorKind::EmptyWindow, fmt::format("summary: {} is empty", s.label()));
	}
	return summary(s, DateRange(s.front().period, s.back().period));
}

} // namespace bevcurve
