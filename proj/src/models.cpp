#include "bevcurve/models.hpp"

#include "bevcurve/efficiency.hpp"
#include "bevcurve/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace bevcurve::models {

namespace {

void check(bool ok, const std::string &what) {
	if (!ok) {
		throw Error(ErrorKind::DomainError, what);
	}
}

bool finite_positive(double x) {
	return std::isfinite(x) && x > 0.0;
}

} // namespace

void Ms16Params::validate() const {
	check(finite_positive(eps), fmt::format("eps must be positive, got {}", eps));
	check(std::isfinite(zeta) && zeta >= 0.0 && zeta < 1.0, fmt::format("zeta must lie in [0, 1), got {}", zeta));
	check(finite_positive(kappa), fmt::format("kappa must be positive, got {}", kappa));
}

double ms16_efficient_rate(double u, double v, const Ms16Params &p) {
	p.validate();
	check(finite_positive(u) && finite_positive(v), fmt::format("rates must be positive (u={}, v={})", u, v));
	if (p.eps == 1.0 && p.zeta == 0.0 && p.kappa == 1.0) {
		return efficiency::efficient_rate(u, v);
	}
	const double base = p.kappa * p.eps / (1.0 - p.zeta) * v * std::pow(u, p.eps);
	return std::pow(base, 1.0 / (1.0 + p.eps));
}

FormulaComparison compare_formulas(const PairedSeries &pairs, const Ms16Params &p) {
	if (pairs.empty()) {
		throw Error(ErrorKind::EmptySeries, "compare_formulas: empty series");
	}
	FormulaComparison out{0.0, -1.0, pairs[0].period};
	for (const auto &o : pairs.observations()) {
		const double d = std::abs(ms16_efficient_rate(o.u, o.v, p) - efficiency::efficient_rate(o.u, o.v));
		out.mean_abs_diff += d;
		if (d > out.max_abs_diff) {
			out.max_abs_diff = d;
			out.max_period = o.period;
		}
	}
	out.mean_abs_diff /= static_cast<double>(pairs.size());
	out.mean_abs_diff = std::min(out.mean_abs_diff, out.max_abs_diff);
	return out;
}

void FlowParams::validate() const {
	check(finite_positive(lambda), fmt::format("job-separation rate must be positive, got {}", lambda));
	check(finite_positive(f), fmt::format("job-finding rate must be positive, got {}", f));
}

double steady_state_u(const FlowParams &fp) {
	fp.validate();
	return fp.lambda / (fp.lambda + fp.f);
}

double unemployment_path(double u0, const FlowParams &fp, double t) {
	check(u0 > 0.0 && u0 < 1.0, fmt::format("initial unemployment {} outside (0, 1)", u0));
	check(std::isfinite(t) && t >= 0.0, fmt::format("time must be >= 0, got {}", t));
	const double ub = steady_state_u(fp);
	return ub + (u0 - ub) * std::exp(-(fp.lambda + fp.f) * t);
}

std::vector<PathPoint> simulate_ode(double u0, const FlowParams &fp, double dt, double T) {
	fp.validate();
	check(u0 > 0.0 && u0 < 1.0, fmt::format("initial unemployment {} outside (0, 1)", u0));
	check(dt > 0.0 && dt <= 0.25, fmt::format("step {} outside (0, 0.25]", dt));
	check(std::isfinite(T) && T > 0.0, fmt::format("horizon must be positive, got {}", T));

	const auto rhs = [&](double u) { return fp.lambda * (1.0 - u) - fp.f * u; };
	// Whole steps, then a short final step when T/dt is not an integer.
	const auto full = static_cast<std::size_t>(std::floor(T / dt + 1e-9));
	std::vector<double> times;
	times.reserve(full + 2);
	for (std::size_t s = 0; s <= full; ++s) {
		times.push_back(static_cast<double>(s) * dt);
	}
	if (T - times.back() > 1e-9 * dt) {
		times.push_back(T);
	}

	std::vector<PathPoint> path;
	path.reserve(times.size());
	path.push_back({0.0, u0});
	double u = u0;
	for (std::size_t s = 1; s < times.size(); ++s) {
		const double h = times[s] - times[s - 1];
		const double k1 = rhs(u);
		const double k2 = rhs(u + 0.5 * h * k1);
		const double k3 = rhs(u + 0.5 * h * k2);
		const double k4 = rhs(u + h * k3);
		u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
		if (!(u > 0.0 && u < 1.0)) {
			throw Error(ErrorKind::IntegrationError, fmt::format("unemployment left (0, 1) at t={}: {}", times[s], u));
		}
		path.push_back({times[s], u});
	}
	return path;
}

double half_life(const FlowParams &fp) {
	fp.validate();
	return std::numbers::ln2 / (fp.lambda + fp.f);
}

BeveridgePoint beveridge_from_matching(const FlowParams &fp, double theta) {
	check(finite_positive(fp.omega), fmt::format("matching efficiency must be positive, got {}", fp.omega));
	check(std::isfinite(fp.lambda) && fp.lambda >= 0.0, fmt::format("job-separation rate {} is negative", fp.lambda));
	check(finite_positive(theta), fmt::format("tightness must be positive, got {}", theta));
	const double finding = fp.omega * std::sqrt(theta);
	const double u = fp.lambda / (fp.lambda + finding);
	return {u, theta * u};
}

void PolicyInput::validate() const {
	check(finite_positive(multiplier), fmt::format("monetary multiplier must be positive, got {}", multiplier));
	check(std::isfinite(i) && i >= 0.0, fmt::format("nominal rate must be >= 0, got {}", i));
	check(std::isfinite(u) && std::isfinite(u_star), "unemployment rates must be finite");
}

PolicyRecommendation policy_rate_change(const PolicyInput &p) {
	p.validate();
	const double g = p.u - p.u_star;
	const double change = g == 0.0 ? 0.0 : -g / p.multiplier;
	const double target = p.i + change;
	const bool zlb = target < 0.0;
	return {g, change, zlb ? 0.0 : target, zlb};
}

} // namespace bevcurve::models
