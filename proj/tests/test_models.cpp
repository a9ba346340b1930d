#include "bevcurve/efficiency.hpp"
#include "bevcurve/error.hpp"
#include "bevcurve/models.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

using namespace bevcurve;
using namespace bevcurve::models;
using Catch::Approx;

namespace {

ErrorKind kind_of(const std::function<void()> &fn) {
	try {
		fn();
	} catch (const Error &e) {
		return e.kind();
	}
	FAIL("expected an Error");
	return ErrorKind::UsageError;
}

double max_ode_error(double u0, const FlowParams &fp, double dt, double T) {
	double err = 0.0;
	for (const auto &pt : simulate_ode(u0, fp, dt, T)) {
		err = std::max(err, std::abs(pt.u - unemployment_path(u0, fp, pt.t)));
	}
	return err;
}

} // namespace

TEST_CASE("generalized formula reduces to the square root", "[models][ms16]") {
	const Ms16Params unit{};
	for (double u = 0.01; u < 0.3; u += 0.013) {
		for (double v = 0.005; v < 0.2; v += 0.011) {
			CHECK(ms16_efficient_rate(u, v, unit) == Approx(efficiency::efficient_rate(u, v)).epsilon(1e-14));
		}
	}
}

TEST_CASE("generalized formula examples and homogeneity", "[models][ms16]") {
	// 40-digit evaluation at u=0.05, v=0.03, (0.9, 0.26, 0.92).
	const Ms16Params cal{0.9, 0.26, 0.92};
	CHECK(ms16_efficient_rate(0.05, 0.03, cal) == Approx(0.04054067610165591).epsilon(1e-13));

	// Degree-one homogeneity in (u, v) whenever eps = 1.
	const Ms16Params p{1.0, 0.2, 0.8};
	for (double k : {0.25, 0.5, 2.0, 3.0}) {
		CHECK(ms16_efficient_rate(0.03 * k, 0.02 * k, p) ==
		      Approx(k * ms16_efficient_rate(0.03, 0.02, p)).epsilon(1e-13));
	}

	CHECK(kind_of([] { ms16_efficient_rate(0.05, 0.03, {0.0, 0.0, 1.0}); }) == ErrorKind::DomainError);
	CHECK(kind_of([] { ms16_efficient_rate(0.05, 0.03, {1.0, 1.0, 1.0}); }) == ErrorKind::DomainError);
	CHECK(kind_of([] { ms16_efficient_rate(0.05, 0.03, {1.0, 0.0, 0.0}); }) == ErrorKind::DomainError);
	CHECK(kind_of([] { ms16_efficient_rate(0.0, 0.03, {}); }) == ErrorKind::DomainError);
}

TEST_CASE("formula comparison", "[models][ms16]") {
	std::vector<PairedObservation> obs;
	Period p = Period::quarterly(1990, 1);
	for (int i = 0; i < 20; ++i) {
		obs.push_back({p, 0.04 + 0.002 * i, 0.05 - 0.0015 * i});
		p = p.next();
	}
	const PairedSeries pairs(Frequency::Quarterly, obs);
	const auto same = compare_formulas(pairs, {});
	CHECK(same.mean_abs_diff == 0.0);
	CHECK(same.max_abs_diff == 0.0);

	const Ms16Params cal{0.9, 0.26, 0.92};
	const auto diff = compare_formulas(pairs, cal);
	double mean = 0.0;
	double mx = 0.0;
	for (const auto &o : obs) {
		const double d = std::abs(ms16_efficient_rate(o.u, o.v, cal) - std::sqrt(o.u * o.v));
		mean += d / static_cast<double>(obs.size());
		mx = std::max(mx, d);
	}
	CHECK(diff.mean_abs_diff == Approx(mean).epsilon(1e-12));
	CHECK(diff.max_abs_diff == mx);
	CHECK(diff.mean_abs_diff <= diff.max_abs_diff);

	const PairedSeries single(Frequency::Quarterly, {obs[3]});
	const auto one = compare_formulas(single, cal);
	CHECK(one.mean_abs_diff == one.max_abs_diff);
	CHECK(one.max_period == obs[3].period);
}

TEST_CASE("steady state and closed-form path", "[models][flows]") {
	const FlowParams fp{0.032, 0.558};
	CHECK(steady_state_u(fp) == Approx(0.05423728813559322).epsilon(1e-14));
	CHECK(unemployment_path(0.10, fp, 0.0) == 0.10);
	CHECK(unemployment_path(0.10, fp, 3.0) == Approx(0.06203218762421365).epsilon(1e-13));
	CHECK(unemployment_path(0.10, fp, 1e4) == Approx(steady_state_u(fp)).epsilon(1e-14));

	const double ub = steady_state_u(fp);
	const double closed = (0.10 - unemployment_path(0.10, fp, 3.0)) / (0.10 - ub);
	CHECK(closed == Approx(0.82966701).epsilon(1e-7));

	CHECK(half_life(fp) == Approx(1.1748257297626192).epsilon(1e-14));
	CHECK(half_life(fp) == Approx(1.17).margin(0.005));
	// After one half-life, half of the gap is gone.
	const double h = half_life(fp);
	CHECK(unemployment_path(0.10, fp, h) - ub == Approx(0.5 * (0.10 - ub)).epsilon(1e-12));
	CHECK(unemployment_path(0.10, fp, 2 * h) - ub == Approx(0.25 * (0.10 - ub)).epsilon(1e-12));

	CHECK(kind_of([] { steady_state_u({0.0, 0.5}); }) == ErrorKind::DomainError);
	CHECK(kind_of([] { unemployment_path(1.2, {0.03, 0.5}, 1.0); }) == ErrorKind::DomainError);
}

TEST_CASE("Runge-Kutta integration tracks the closed form", "[models][ode]") {
	std::mt19937 rng(12);
	std::uniform_real_distribution<double> lam(0.005, 0.08);
	std::uniform_real_distribution<double> f(0.1, 0.9);
	std::uniform_real_distribution<double> u0(0.02, 0.25);
	std::uniform_real_distribution<double> horizon(1.0, 60.0);
	for (int rep = 0; rep < 40; ++rep) {
		const FlowParams fp{lam(rng), f(rng)};
		CHECK(max_ode_error(u0(rng), fp, 0.01, horizon(rng)) < 1e-8);
	}

	const auto path = simulate_ode(0.10, {0.032, 0.558}, 0.01, 3.0);
	CHECK(path.front().t == 0.0);
	CHECK(path.back().t == Approx(3.0).margin(1e-12));
	CHECK(path.size() == 301);
	CHECK(path.back().u == Approx(0.06203218762421365).epsilon(1e-9));

	// Shortened final step.
	const auto ragged = simulate_ode(0.10, {0.032, 0.558}, 0.25, 1.1);
	CHECK(ragged.back().t == Approx(1.1).margin(1e-12));
	CHECK(ragged.size() == 6);
}

TEST_CASE("Runge-Kutta error shrinks at fourth order", "[models][ode]") {
	const FlowParams fp{0.03, 0.6};
	const double e1 = max_ode_error(0.15, fp, 0.2, 12.0);
	const double e2 = max_ode_error(0.15, fp, 0.1, 12.0);
	const double e3 = max_ode_error(0.15, fp, 0.05, 12.0);
	CHECK(e1 / e2 == Approx(16.0).margin(2.0));
	CHECK(e2 / e3 == Approx(16.0).margin(2.0));
}

TEST_CASE("paths approach the steady state monotonically without crossing", "[models][ode][property]") {
	const FlowParams fp{0.032, 0.558};
	const double ub = steady_state_u(fp);
	for (double start : {0.01, 0.03, 0.08, 0.2}) {
		const auto path = simulate_ode(start, fp, 0.05, 30.0);
		for (std::size_t i = 1; i < path.size(); ++i) {
			if (start > ub) {
				CHECK(path[i].u <= path[i - 1].u);
				CHECK(path[i].u > ub);
			} else {
				CHECK(path[i].u >= path[i - 1].u);
				CHECK(path[i].u < ub);
			}
		}
	}
}

TEST_CASE("integration argument checks", "[models][ode]") {
	CHECK(kind_of([] { simulate_ode(0.1, {0.03, 0.5}, 0.0, 1.0); }) == ErrorKind::DomainError);
	CHECK(kind_of([] { simulate_ode(0.1, {0.03, 0.5}, 0.5, 1.0); }) == ErrorKind::DomainError);
	CHECK(kind_of([] { simulate_ode(0.1, {0.03, 0.5}, 0.01, -1.0); }) == ErrorKind::DomainError);
	CHECK(kind_of([] { simulate_ode(0.0, {0.03, 0.5}, 0.01, 1.0); }) == ErrorKind::DomainError);
}

TEST_CASE("Beveridge curve from the matching model", "[models][matching]") {
	const FlowParams fp{0.032, 0.0, 0.6};
	const auto mid = beveridge_from_matching(fp, 1.0);
	CHECK(mid.u == Approx(0.032 / 0.632).epsilon(1e-14));
	CHECK(mid.v == mid.u);

	double prev_u = 1.0;
	double prev_v = 0.0;
	for (int i = 20; i <= 200; ++i) {
		const double theta = i / 100.0;
		const auto pt = beveridge_from_matching(fp, theta);
		CHECK(pt.u < prev_u);
		CHECK(pt.v > prev_v);
		CHECK(pt.v / pt.u == Approx(theta).epsilon(1e-14));
		// Recover the job-finding rate from u and check f / sqrt(theta) = omega.
		const double f = 0.032 * (1 - pt.u) / pt.u;
		CHECK(f / std::sqrt(theta) == Approx(0.6).epsilon(1e-12));
		prev_u = pt.u;
		prev_v = pt.v;
	}
	CHECK(kind_of([&] { beveridge_from_matching(fp, 0.0); }) == ErrorKind::DomainError);
	CHECK(kind_of([] { beveridge_from_matching({0.03, 0.0, 0.0}, 1.0); }) == ErrorKind::DomainError);
}

TEST_CASE("matching model stays close to a rectangular hyperbola", "[models][matching]") {
	const FlowParams fp{0.032, 0.0, 0.6};
	double lo_uv = INFINITY;
	double hi_uv = -INFINITY;
	double lo_u = INFINITY;
	double hi_u = -INFINITY;
	for (int i = 20; i <= 200; ++i) {
		const auto pt = beveridge_from_matching(fp, i / 100.0);
		lo_uv = std::min(lo_uv, std::log(pt.u * pt.v));
		hi_uv = std::max(hi_uv, std::log(pt.u * pt.v));
		lo_u = std::min(lo_u, std::log(pt.u));
		hi_u = std::max(hi_u, std::log(pt.u));
	}
	// 40-digit reference for the sweep over [0.2, 2] in steps of 0.01.
	CHECK(hi_uv - lo_uv == Approx(0.15129).margin(5e-5));
	CHECK(hi_u - lo_u == Approx(1.076).margin(5e-3));
	CHECK(hi_uv - lo_uv < 0.15 * (hi_u - lo_u));

	// As separations vanish the curve tends to u v = (lambda / omega)^2.
	const FlowParams tiny{1e-7, 0.0, 0.6};
	for (double theta : {0.3, 1.0, 1.8}) {
		const auto pt = beveridge_from_matching(tiny, theta);
		CHECK(pt.u * pt.v == Approx(std::pow(1e-7 / 0.6, 2)).epsilon(1e-6));
	}
}

TEST_CASE("policy rule", "[models][policy]") {
	const auto tight = policy_rate_change({0.005, 0.034, 0.050, 0.5});
	CHECK(tight.gap == Approx(-0.016).margin(1e-15));
	CHECK(tight.rate_change == Approx(0.032).margin(1e-15));
	CHECK(tight.target_rate == Approx(0.037).margin(1e-15));
	CHECK_FALSE(tight.zlb_binding);

	const auto slack = policy_rate_change({0.03, 0.06, 0.05, 0.5});
	CHECK(slack.rate_change == Approx(-0.02).margin(1e-15));
	CHECK(slack.target_rate == Approx(0.01).margin(1e-15));
	CHECK_FALSE(slack.zlb_binding);

	const auto zlb = policy_rate_change({0.01, 0.06, 0.05, 0.5});
	CHECK(zlb.target_rate == 0.0);
	CHECK(zlb.zlb_binding);

	const auto none = policy_rate_change({0.02, 0.05, 0.05, 0.5});
	CHECK(none.rate_change == 0.0);
	CHECK_FALSE(std::signbit(none.rate_change));

	CHECK(kind_of([] { policy_rate_change({0.02, 0.05, 0.05, 0.0}); }) == ErrorKind::DomainError);
}

TEST_CASE("policy rule is linear in the gap with opposite sign", "[models][policy][property]") {
	std::mt19937 rng(31);
	std::uniform_real_distribution<double> rate(0.01, 0.12);
	std::uniform_real_distribution<double> mult(0.1, 2.0);
	for (int rep = 0; rep < 500; ++rep) {
		const double u = rate(rng);
		const double us = rate(rng);
		const double m = mult(rng);
		const auto r = policy_rate_change({0.1, u, us, m});
		CHECK(r.rate_change * m == Approx(-(u - us)).margin(1e-15));
		CHECK(r.rate_change * (u - us) <= 0.0);
		const auto doubled = policy_rate_change({0.1, us + 2 * (u - us), us, m});
		CHECK(doubled.rate_change == Approx(2 * r.rate_change).margin(1e-15));
	}
}
