#pragma once

#include "bevcurve/period.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bevcurve {

/// What a series measures. Rates live in [0, 1); counts are >= 0; Real is
/// any finite value (gaps, log levels, tightness).
enum class ValueKind { Rate, Count, Real };

std::string_view to_string(ValueKind k);

struct Observation {
	Period period;
	double value;

	bool operator==(const Observation &) const = default;
};

/// Which source covered which sub-range of a spliced series.
struct ProvenanceEntry {
	DateRange range;
	std::string label;

	bool operator==(const ProvenanceEntry &) const = default;
};

/**
 * Immutable, frequency-tagged sequence of observations.
 *
 * Periods are strictly increasing; gaps are allowed and never filled.
 * Partial periods (quarters averaged over fewer than three months) are
 * carried as metadata so downstream reports can flag them.
 */
class TimeSeries {
public:
	TimeSeries(Frequency freq, ValueKind kind, std::string label, std::vector<Observation> obs,
	           std::vector<Period> partial = {}, std::vector<ProvenanceEntry> provenance = {});

	Frequency frequency() const noexcept { return freq_; }
	ValueKind kind() const noexcept { return kind_; }
	const std::string &label() const noexcept { return label_; }
	std::span<const Observation> observations() const noexcept { return obs_; }
	const std::vector<Period> &partial_periods() const noexcept { return partial_; }
	const std::vector<ProvenanceEntry> &provenance() const noexcept { return provenance_; }

	std::size_t size() const noexcept { return obs_.size(); }
	bool empty() const noexcept { return obs_.empty(); }
	const Observation &front() const { return obs_.front(); }
	const Observation &back() const { return obs_.back(); }

	bool is_partial(const Period &p) const;
	std::optional<double> at(const Period &p) const;

	/// Observations whose period falls in r (may be empty).
	TimeSeries restrict(const DateRange &r) const;
	TimeSeries relabel(std::string label) const;

	bool operator==(const TimeSeries &) const = default;

private:
	Frequency freq_;
	ValueKind kind_;
	std::string label_;
	std::vector<Observation> obs_;
	std::vector<Period> partial_;
	std::vector<ProvenanceEntry> provenance_;
};

struct PairedObservation {
	Period period;
	double u;
	double v;

	bool operator==(const PairedObservation &) const = default;
};

/// Aligned unemployment/vacancy observations; both rates strictly positive.
class PairedSeries {
public:
	PairedSeries(Frequency freq, std::vector<PairedObservation> obs, std::vector<Period> partial = {});

	Frequency frequency() const noexcept { return freq_; }
	std::span<const PairedObservation> observations() const noexcept { return obs_; }
	const std::vector<Period> &partial_periods() const noexcept { return partial_; }
	std::size_t size() const noexcept { return obs_.size(); }
	bool empty() const noexcept { return obs_.empty(); }
	const PairedObservation &operator[](std::size_t i) const { return obs_[i]; }

	PairedSeries restrict(const DateRange &r) const;
	/// Index range [first, last) of observations inside r.
	std::pair<std::size_t, std::size_t> index_range(const DateRange &r) const;

	TimeSeries u_series() const;
	TimeSeries v_series() const;

	bool operator==(const PairedSeries &) const = default;

private:
	Frequency freq_;
	std::vector<PairedObservation> obs_;
	std::vector<Period> partial_;
};

struct Extremum {
	double value;
	Period period;
};

struct SummaryStats {
	double mean;
	Extremum min;
	Extremum max;
	std::size_t count;
};

/// Quarterly means of a monthly series. Quarters with fewer than three
/// months present are kept and listed in partial_periods().
TimeSeries monthly_to_quarterly(const TimeSeries &s);

/// Concatenates each series restricted to its range. Ranges must be
/// chronologically ordered and disjoint; gaps between ranges stay gaps.
TimeSeries splice(std::span<const std::pair<DateRange, TimeSeries>> segments);

struct AlignResult {
	PairedSeries pairs;
	std::size_t dropped_nonpositive = 0;
};

/// Inner join on period; pairs with u <= 0 or v <= 0 are dropped and counted.
AlignResult align(const TimeSeries &u, const TimeSeries &v);

/// Mean, extrema (earliest period wins ties) and count over r.
SummaryStats summary(const TimeSeries &s, const DateRange &r);
/// Summary over every observation of s.
SummaryStats summary(const TimeSeries &s);

} // namespace bevcurve
