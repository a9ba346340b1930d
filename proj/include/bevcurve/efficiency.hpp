#pragma once

#include "bevcurve/series.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace bevcurve::efficiency {

enum class MarketState { Slack, Tight, Efficient };

std::string_view to_string(MarketState s);

/// Efficient unemployment rate: the geometric mean sqrt(u * v). The efficient
/// vacancy rate takes the same value.
double efficient_rate(double u, double v);

/// Labor-market tightness v / u.
double tightness(double u, double v);

/// Unemployment gap u - sqrt(u * v), in rate units. Positive when slack.
double gap(double u, double v);

/// Efficient when |v - u| <= tol, otherwise Tight if v > u, else Slack.
MarketState classify(double u, double v, double tol = 0.0);

struct EfficiencyPoint {
	Period period;
	double u;
	double v;
	double u_star;
	double theta;
	double gap;
	MarketState state;
};

std::vector<EfficiencyPoint> analyze(const PairedSeries &series, double tol = 0.0);

struct Episode {
	MarketState state;
	DateRange range;
	/// Max tightness for Tight runs, min for Slack runs, first point otherwise.
	Period extremum_period;
	double extremum_theta;
};

/// Maximal runs of identical state, in order.
std::vector<Episode> episodes(std::span<const EfficiencyPoint> points);

/// Derived columns as series, for summaries and reports.
TimeSeries u_star_series(std::span<const EfficiencyPoint> points, Frequency freq);
TimeSeries theta_series(std::span<const EfficiencyPoint> points, Frequency freq);
TimeSeries gap_series(std::span<const EfficiencyPoint> points, Frequency freq);

} // namespace bevcurve::efficiency
