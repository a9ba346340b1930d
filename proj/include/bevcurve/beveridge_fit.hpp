#pragma once

#include "bevcurve/series.hpp"

#include <cstddef>
#include <nlohmann/json.hpp>
#include <vector>

namespace bevcurve::fit {

/// OLS of log v on log u over one regime.
///
/// `elasticity` is the signed slope (negative on a downward-sloping curve).
/// Formulas that take the Beveridge elasticity as a positive magnitude
/// should use elasticity_magnitude().
struct Segment {
	DateRange range;
	double elasticity;
	double intercept;
	double ssr;
	std::size_t n;
	std::size_t first; // index of the first observation in the fitted sample
	std::size_t last;  // one past the last observation
};

/// Positive Beveridge elasticity, -slope.
inline double elasticity_magnitude(const Segment &s) { return -s.elasticity; }

/// Requires at least three observations in r; a constant regressor throws
/// SingularFit.
Segment log_ols(const PairedSeries &pairs, const DateRange &r);

/// Optimal placement of a fixed number of breaks. Break indices point at
/// the first observation of each new segment.
struct Partition {
	std::size_t num_breaks;
	std::vector<std::size_t> breaks;
	std::vector<Period> break_dates;
	std::vector<Segment> segments;
	double ssr;
};

struct BreakSearch {
	std::size_t n;
	std::size_t min_seg;
	std::vector<Partition> by_breaks; // index k holds the k-break optimum
};

/// Minimum segment length as a fraction of the sample, rounded up.
std::size_t min_segment_length(std::size_t n, double fraction);

/**
 * Globally SSR-minimizing placements of 0..max_breaks breaks.
 *
 * The residual sum of squares of every admissible window is tabulated once,
 * then the optimal k-segment partitions are obtained by the usual dynamic
 * programming recursion over segment endpoints. Ties go to the earliest
 * break. Windows where log u is constant contribute the SSR of an
 * intercept-only fit.
 */
BreakSearch detect_breaks(const PairedSeries &pairs, std::size_t max_breaks, std::size_t min_seg);

struct BicEntry {
	std::size_t num_breaks;
	double ssr;
	double bic;
};

struct BeveridgeFit {
	std::vector<Segment> segments;
	std::vector<Period> break_dates;
	std::size_t num_breaks;
	double selection_score;
	std::vector<BicEntry> bic_path;
};

/// n log(SSR/n) + (3k + 2) log n. SSR is floored at a tiny multiple of
/// `scale`.
double bic(std::size_t n, double ssr, std::size_t num_breaks, double scale);

/// Picks the break count with the lowest BIC (fewest breaks on ties).
BeveridgeFit select_num_breaks(const BreakSearch &results);

struct HyperbolaConstant {
	double A;
	double dispersion; // population std of log(u v)
};

/// A = geometric mean of u v over r.
HyperbolaConstant hyperbola_constant(const PairedSeries &pairs, const DateRange &r);

/// Matching elasticity implied by a Beveridge elasticity magnitude eps at
/// unemployment rate u: (eps - u / (1 - u)) / (1 + eps).
double matching_elasticity(double eps, double u);

/// Fit report: segments (ranges, elasticities at 4 decimals), break dates,
/// chosen break count and the BIC path.
nlohmann::json to_json(const BeveridgeFit &fit);

} // namespace bevcurve::fit
