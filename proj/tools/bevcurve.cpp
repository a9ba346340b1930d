#include "bevcurve/cli/commands.hpp"
#include "bevcurve/cli/config.hpp"
#include "bevcurve/ingest.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <optional>

using namespace bevcurve;

namespace {

struct Overrides {
	std::string config;
	std::optional<std::string> era;
	std::optional<std::string> format;
	std::optional<std::string> out;
	std::optional<std::size_t> max_breaks;
	std::optional<double> min_seg;
	std::optional<double> eps;
	std::optional<double> zeta;
	std::optional<double> kappa;
	std::optional<double> multiplier;
	std::optional<double> tol;
};

cli::RunConfig resolve(const Overrides &o) {
	cli::RunConfig cfg = o.config.empty() ? cli::RunConfig{} : cli::load_config(o.config);
	if (o.era) {
		cfg.era = ingest::parse_era(*o.era);
	}
	if (o.format) {
		cfg.format = cli::parse_format(*o.format);
	}
	if (o.out) {
		cfg.out_dir = *o.out;
	}
	if (o.max_breaks) {
		cfg.breaks.max_breaks = *o.max_breaks;
	}
	if (o.min_seg) {
		cfg.breaks.min_seg_fraction = *o.min_seg;
	}
	if (o.eps) {
		cfg.ms16.eps = *o.eps;
	}
	if (o.zeta) {
		cfg.ms16.zeta = *o.zeta;
	}
	if (o.kappa) {
		cfg.ms16.kappa = *o.kappa;
	}
	if (o.multiplier) {
		cfg.multiplier = *o.multiplier;
	}
	if (o.tol) {
		cfg.tol = *o.tol;
	}
	return cfg;
}

} // namespace

int main(int argc, char **argv) {
	CLI::App app{"Beveridge curve, efficient unemployment and policy statistics"};
	app.require_subcommand(1);

	Overrides o;
	app.add_option("--config", o.config, "Configuration file (INI)");
	app.add_option("--era", o.era, "postwar | pandemic | historical | full")
		->check(CLI::IsMember({"postwar", "pandemic", "historical", "full"}));
	app.add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
	app.add_option("--out", o.out, "Output directory");
	app.add_option("--max-breaks", o.max_breaks, "Largest number of structural breaks considered");
	app.add_option("--min-seg", o.min_seg, "Minimum segment length as a fraction of the sample");
	app.add_option("--eps", o.eps, "Beveridge elasticity magnitude for the generalized formula");
	app.add_option("--zeta", o.zeta, "Social value of nonwork");
	app.add_option("--kappa", o.kappa, "Recruiting cost");
	app.add_option("--multiplier", o.multiplier, "Monetary multiplier du/di");
	app.add_option("--tol", o.tol, "Classification tolerance on |v - u|");

	auto *build = app.add_subcommand("build", "Assemble datasets from the source files");
	auto *analyze = app.add_subcommand("analyze", "Efficient rate, tightness, gap and episodes");
	auto *breaks = app.add_subcommand("breaks", "Structural breaks and Beveridge elasticities");
	auto *compare = app.add_subcommand("compare", "Compare sqrt(uv) with the generalized formula");

	cli::PolicyArgs policy_args{};
	auto *policy = app.add_subcommand("policy", "Interest-rate recommendation from u, v and i");
	policy->add_option("--u", policy_args.u, "Unemployment rate (fraction)")->required();
	policy->add_option("--v", policy_args.v, "Vacancy rate (fraction)")->required();
	policy->add_option("--i", policy_args.i, "Current nominal interest rate (fraction)")->required();

	cli::SimulateArgs sim_args{};
	auto *simulate = app.add_subcommand("simulate", "Unemployment dynamics toward the Beveridgean rate");
	simulate->add_option("--u0", sim_args.u0, "Initial unemployment rate")->required();
	simulate->add_option("--lambda", sim_args.lambda, "Monthly job-separation rate")->required();
	simulate->add_option("--f", sim_args.f, "Monthly job-finding rate")->required();
	simulate->add_option("--T", sim_args.horizon, "Horizon in months")->required();
	simulate->add_option("--dt", sim_args.dt, "Step in months")->capture_default_str();

	for (auto *sub : {build, analyze, breaks, compare, policy, simulate}) {
		sub->fallthrough();
	}

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp &e) {
		return app.exit(e);
	} catch (const CLI::ParseError &e) {
		app.exit(e);
		return cli::kUsage;
	}

	try {
		const auto cfg = resolve(o);
		if (*build) {
			cli::cmd_build(cfg, std::cout);
		} else if (*analyze) {
			cli::cmd_analyze(cfg, std::cout);
		} else if (*breaks) {
			cli::cmd_breaks(cfg, std::cout);
		} else if (*compare) {
			cli::cmd_compare(cfg, std::cout);
		} else if (*policy) {
			cli::cmd_policy(cfg, policy_args, std::cout);
		} else if (*simulate) {
			cli::cmd_simulate(cfg, sim_args, std::cout);
		}
	} catch (const Error &e) {
		std::cerr << "error: " << e.what() << "\n";
		return cli::exit_code_for(e.kind());
	}
	return cli::kSuccess;
}
