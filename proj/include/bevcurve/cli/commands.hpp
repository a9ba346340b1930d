#pragma once

#include "bevcurve/cli/config.hpp"
#include "bevcurve/error.hpp"

#include <ostream>

namespace bevcurve::cli {

/// Process exit codes.
enum ExitCode : int {
	kSuccess = 0,
	kUsage = 1,
	kDataError = 2,
	kInfeasible = 3,
};

int exit_code_for(ErrorKind kind);

/// Writes <era>.csv (period,u,v) for the configured era, or for every era
/// when none is configured, plus build_report.json.
void cmd_build(const RunConfig &cfg, std::ostream &log);

/// Per-period efficiency table, episode list and summary for one era.
/// Needs the dataset written by cmd_build.
void cmd_analyze(const RunConfig &cfg, std::ostream &log);

/// Structural-break fit report and per-segment scatter table.
void cmd_breaks(const RunConfig &cfg, std::ostream &log);

/// sqrt(uv) against the generalized formula, per period and summarized.
void cmd_compare(const RunConfig &cfg, std::ostream &log);

struct PolicyArgs {
	double u;
	double v;
	double i;
};

/// Prints gap, tightness and the recommended interest-rate move.
void cmd_policy(const RunConfig &cfg, const PolicyArgs &args, std::ostream &log);

struct SimulateArgs {
	double u0;
	double lambda;
	double f;
	double horizon;
	double dt = 0.01;
};

/// Analytic and Runge-Kutta unemployment paths plus the half-life.
void cmd_simulate(const RunConfig &cfg, const SimulateArgs &args, std::ostream &log);

} // namespace bevcurve::cli
