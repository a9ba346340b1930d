#pragma once

// Reference computations for tests: QR least squares and exhaustive break
// enumeration.

#include "bevcurve/series.hpp"

#include <cstddef>
#include <vector>

namespace oracle {

struct Line {
	double slope;
	double intercept;
	double ssr;
};

/// Least squares of y on [1, x] via column-pivoted Householder QR.
Line qr_fit(const std::vector<double> &x, const std::vector<double> &y);

/// log v on log u over observations [first, last).
Line qr_log_fit(const bevcurve::PairedSeries &pairs, std::size_t first, std::size_t last);

struct Placement {
	std::vector<std::size_t> breaks;
	double ssr;
};

/// Every admissible placement of k breaks with segments of at least min_seg
/// observations; returns the one with the smallest total SSR (earliest
/// placement on ties).
Placement brute_force_breaks(const bevcurve::PairedSeries &pairs, std::size_t k, std::size_t min_seg);

} // namespace oracle
