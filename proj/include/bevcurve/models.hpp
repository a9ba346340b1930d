#pragma once

#include "bevcurve/series.hpp"

#include <optional>
#include <vector>

namespace bevcurve::models {

/// Sufficient statistics of the generalized efficient-unemployment formula.
/// eps is the positive Beveridge elasticity magnitude.
struct Ms16Params {
	double eps = 1.0;
	double zeta = 0.0;
	double kappa = 1.0;

	void validate() const;
};

/// u* = [kappa eps / (1 - zeta) * v * u^eps]^(1 / (1 + eps)).
/// Reduces to sqrt(u v) at (eps, zeta, kappa) = (1, 0, 1).
double ms16_efficient_rate(double u, double v, const Ms16Params &p);

struct FormulaComparison {
	double mean_abs_diff;
	double max_abs_diff;
	Period max_period;
};

/// Pointwise |ms16 u* - sqrt(u v)| over the series.
FormulaComparison compare_formulas(const PairedSeries &pairs, const Ms16Params &p);

/// Monthly flow rates. omega is matching efficiency, only needed for the
/// matching-function Beveridge curve.
struct FlowParams {
	double lambda;
	double f;
	double omega = 0.0;

	void validate() const;
};

/// Beveridgean rate lambda / (lambda + f).
double steady_state_u(const FlowParams &fp);

/// Closed-form solution of du/dt = lambda (1 - u) - f u at time t (months).
double unemployment_path(double u0, const FlowParams &fp, double t);

struct PathPoint {
	double t;
	double u;
};

/// Fixed-step classical Runge-Kutta integration of the flow equation from 0
/// to T. The last step is shortened when T is not a multiple of dt. Throws
/// IntegrationError if the state leaves (0, 1).
std::vector<PathPoint> simulate_ode(double u0, const FlowParams &fp, double dt, double T);

/// ln 2 / (lambda + f), in months.
double half_life(const FlowParams &fp);

struct BeveridgePoint {
	double u;
	double v;
};

/// Steady state of a symmetric Cobb-Douglas matching model at tightness
/// theta: f = omega sqrt(theta), u = lambda / (lambda + f), v = theta u.
BeveridgePoint beveridge_from_matching(const FlowParams &fp, double theta);

/// Interest rate i and multiplier du/di are fractions (0.01 = 1pp).
struct PolicyInput {
	double i;
	double u;
	double u_star;
	double multiplier;

	void validate() const;
};

struct PolicyRecommendation {
	double gap;        // u - u*
	double rate_change; // i* - i; positive means raise
	double target_rate; // i*, floored at zero
	bool zlb_binding;
};

/// i - i* = (u - u*) / (du/di), applied as a one-shot change.
PolicyRecommendation policy_rate_change(const PolicyInput &p);

} // namespace bevcurve::models
