#include "bevcurve/cli/commands.hpp"

#include "bevcurve/beveridge_fit.hpp"
#include "bevcurve/efficiency.hpp"
#include "bevcurve/ingest.hpp"
#include "bevcurve/models.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace bevcurve::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr ingest::Era kAllEras[] = {ingest::Era::Postwar, ingest::Era::Pandemic, ingest::Era::Historical,
                                    ingest::Era::Full};

void write_file(const fs::path &path, const std::string &content) {
	std::ofstream out(path, std::ios::binary);
	if (!out) {
		throw Error(ErrorKind::IoError, fmt::format("cannot write {}", path.string()));
	}
	out << content;
}

void ensure_dir(const fs::path &dir) {
	std::error_code ec;
	fs::create_directories(dir, ec);
	if (ec) {
		throw Error(ErrorKind::IoError, fmt::format("cannot create {}: {}", dir.string(), ec.message()));
	}
}

std::string era_name(ingest::Era e) {
	return std::string(ingest::to_string(e));
}

fs::path dataset_path(const RunConfig &cfg, ingest::Era era) {
	return cfg.out_dir / (era_name(era) + ".csv");
}

PairedSeries load_built(const RunConfig &cfg, ingest::Era era) {
	const auto path = dataset_path(cfg, era);
	if (!fs::exists(path)) {
		throw Error(ErrorKind::IoError, fmt::format("no {} dataset at {}; run `bevcurve build --era {}` first",
		                                            era_name(era), path.string(), era_name(era)));
	}
	return ingest::read_dataset_csv(path, ingest::era_frequency(era));
}

std::string pct(double x) {
	return fmt::format("{:.1f}%", 100.0 * x);
}

std::string pp(double x) {
	return fmt::format("{:+.1f}pp", 100.0 * x);
}

std::string dump(const json &j) {
	return j.dump(2) + "\n";
}

json periods_json(const std::vector<Period> &periods) {
	json out = json::array();
	for (const auto &p : periods) {
		out.push_back(p.label());
	}
	return out;
}

json provenance_json(const std::vector<ProvenanceEntry> &prov) {
	json out = json::array();
	for (const auto &e : prov) {
		out.push_back({{"start", e.range.start.label()}, {"end", e.range.end.label()}, {"source", e.label}});
	}
	return out;
}

void write_figure_manifest(const RunConfig &cfg) {
	const std::string ext = cfg.format == OutputFormat::Csv ? "csv" : "json";
	json figures = json::array();
	auto add = [&](const std::string &id, const std::string &file, const std::string &columns) {
		figures.push_back({{"figure", id}, {"file", file}, {"columns", columns}});
	};
	for (const char *era : {"postwar", "pandemic", "historical", "full"}) {
		const auto table = fmt::format("{}_analysis.{}", era, ext);
		add(fmt::format("{}_unemployment_vacancy", era), table, "period,u,v");
		add(fmt::format("{}_tightness", era), table, "period,theta,state");
		add(fmt::format("{}_efficient_rate_and_gap", era), table, "period,u,u_star,gap_pp");
	}
	add("postwar_beveridge_segments", cfg.format == OutputFormat::Csv ? "postwar_breaks_scatter.csv" : "postwar_breaks.json",
	    "period,segment,log_u,log_v,fitted_log_v");
	add("postwar_formula_comparison", fmt::format("postwar_compare.{}", ext), "period,u_sqrt,u_ms16,diff");
	add("pandemic_beveridge_scatter", fmt::format("pandemic_analysis.{}", ext), "period,u,v,state");
	write_file(cfg.out_dir / "figures.json", dump(figures));
}

void write_recessions(const RunConfig &cfg, const fs::path &path, std::optional<DateRange> window) {
	if (!cfg.recessions) {
		return;
	}
	const auto calendar = ingest::parse_recessions(*cfg.recessions);
	std::ostringstream out;
	out << "peak,trough\n";
	for (const auto &r : calendar.ranges) {
		if (window) {
			const auto freq = window->frequency();
			const Period start = freq == Frequency::Monthly ? r.start : r.start.quarter();
			const Period end = freq == Frequency::Monthly ? r.end : r.end.quarter();
			if (end < window->start || window->end < start) {
				continue;
			}
			out << start.label() << "," << end.label() << "\n";
		} else {
			out << r.start.label() << "," << r.end.label() << "\n";
		}
	}
	write_file(path, out.str());
}

struct Stat {
	const char *name;
	SummaryStats stats;
};

json stats_json(const SummaryStats &s) {
	return {
		{"mean", s.mean},
		{"min", s.min.value},
		{"min_period", s.min.period.label()},
		{"max", s.max.value},
		{"max_period", s.max.period.label()},
		{"count", s.count},
	};
}

} // namespace

int exit_code_for(ErrorKind kind) {
	switch (kind) {
	case ErrorKind::UsageError: return kUsage;
	case ErrorKind::DomainError:
	case ErrorKind::SingularFit:
	case ErrorKind::InfeasiblePartition:
	case ErrorKind::IntegrationError: return kInfeasible;
	default: return kDataError;
	}
}

void cmd_build(const RunConfig &cfg, std::ostream &log) {
	cfg.validate();
	ensure_dir(cfg.out_dir);
	std::vector<ingest::Era> eras;
	if (cfg.era) {
		eras.push_back(*cfg.era);
	} else {
		eras.assign(std::begin(kAllEras), std::end(kAllEras));
	}

	json report = json::object();
	report["openings_splice_start"] = ingest::openings_splice_start().label();
	for (auto era : eras) {
		const auto ds = ingest::build_dataset(cfg.manifest, era);
		const auto path = dataset_path(cfg, era);
		ingest::write_dataset_csv(ds.pairs, path);

		json sources = json::array();
		for (const auto &s : ds.report.sources) {
			sources.push_back({{"series_id", s.series_id},
			                   {"path", s.path.generic_string()},
			                   {"rows_read", s.rows_read},
			                   {"rows_skipped", s.rows_skipped},
			                   {"normalization", s.normalization}});
		}
		report[era_name(era)] = {
			{"file", path.filename().string()},
			{"observations", ds.pairs.size()},
			{"first", ds.pairs[0].period.label()},
			{"last", ds.pairs[ds.pairs.size() - 1].period.label()},
			{"sources", sources},
			{"u_splice", provenance_json(ds.report.u_provenance)},
			{"v_splice", provenance_json(ds.report.v_provenance)},
			{"partial_periods", periods_json(ds.report.partial_periods)},
			{"dropped_nonpositive", ds.report.dropped_nonpositive},
			{"warnings", ds.report.warnings},
		};
		log << fmt::format("{}: {} observations {}-{} -> {}\n", era_name(era), ds.pairs.size(),
		                   ds.pairs[0].period.label(), ds.pairs[ds.pairs.size() - 1].period.label(), path.string());
		for (const auto &w : ds.report.warnings) {
			log << "  warning: " << w << "\n";
		}
	}
	if (cfg.recessions) {
		write_recessions(cfg, cfg.out_dir / "recessions.csv", std::nullopt);
		report["recessions"] = "recessions.csv";
	}
	write_file(cfg.out_dir / "build_report.json", dump(report));
}

void cmd_analyze(const RunConfig &cfg, std::ostream &log) {
	cfg.validate();
	const auto era = cfg.era_or_default();
	const auto name = era_name(era);
	const auto pairs = load_built(cfg, era);
	const auto freq = pairs.frequency();
	const auto points = efficiency::analyze(pairs, cfg.tol);
	const auto eps = efficiency::episodes(points);

	const Stat stats[] = {
		{"u", summary(pairs.u_series())},
		{"v", summary(pairs.v_series())},
		{"u_star", summary(efficiency::u_star_series(points, freq))},
		{"theta", summary(efficiency::theta_series(points, freq))},
		{"gap", summary(efficiency::gap_series(points, freq))},
	};

	std::ostringstream text;
	text << fmt::format("era {}: {}-{}, {} observations\n", name, points.front().period.label(),
	                    points.back().period.label(), points.size());
	for (const auto &s : stats) {
		const auto &st = s.stats;
		if (std::string_view(s.name) == "theta") {
			text << fmt::format("{:<7}mean {:.2f}  min {:.2f} ({})  max {:.2f} ({})\n", s.name, st.mean, st.min.value,
			                    st.min.period.label(), st.max.value, st.max.period.label());
		} else if (std::string_view(s.name) == "gap") {
			text << fmt::format("{:<7}mean {}  min {} ({})  max {} ({})\n", s.name, pp(st.mean), pp(st.min.value),
			                    st.min.period.label(), pp(st.max.value), st.max.period.label());
		} else {
			text << fmt::format("{:<7}mean {}  min {} ({})  max {} ({})\n", s.name, pct(st.mean), pct(st.min.value),
			                    st.min.period.label(), pct(st.max.value), st.max.period.label());
		}
	}
	text << "episodes:\n";
	for (const auto &e : eps) {
		text << fmt::format("  {:<9} {}  extreme theta {:.2f} at {}\n", efficiency::to_string(e.state), e.range.str(),
		                    e.extremum_theta, e.extremum_period.label());
	}
	if (!pairs.partial_periods().empty()) {
		text << "partial periods:";
		for (const auto &p : pairs.partial_periods()) {
			text << " " << p.label();
		}
		text << "\n";
	}

	ensure_dir(cfg.out_dir);
	if (cfg.format == OutputFormat::Csv) {
		std::ostringstream table;
		table << "period,u,v,u_star,theta,gap_pp,state\n";
		for (const auto &p : points) {
			table << fmt::format("{},{:.4f},{:.4f},{:.4f},{:.4f},{:.2f},{}\n", p.period.str(), p.u, p.v, p.u_star,
			                     p.theta, 100.0 * p.gap, efficiency::to_string(p.state));
		}
		write_file(cfg.out_dir / (name + "_analysis.csv"), table.str());

		std::ostringstream episodes_csv;
		episodes_csv << "state,start,end,extremum_period,extremum_theta\n";
		for (const auto &e : eps) {
			episodes_csv << fmt::format("{},{},{},{},{:.4f}\n", efficiency::to_string(e.state), e.range.start.str(),
			                            e.range.end.str(), e.extremum_period.str(), e.extremum_theta);
		}
		write_file(cfg.out_dir / (name + "_episodes.csv"), episodes_csv.str());
		write_file(cfg.out_dir / (name + "_summary.txt"), text.str());
	} else {
		json rows = json::array();
		for (const auto &p : points) {
			rows.push_back({{"period", p.period.str()},
			                {"u", p.u},
			                {"v", p.v},
			                {"u_star", p.u_star},
			                {"theta", p.theta},
			                {"gap_pp", 100.0 * p.gap},
			                {"state", efficiency::to_string(p.state)}});
		}
		json episodes_json = json::array();
		for (const auto &e : eps) {
			episodes_json.push_back({{"state", efficiency::to_string(e.state)},
			                         {"start", e.range.start.str()},
			                         {"end", e.range.end.str()},
			                         {"extremum_period", e.extremum_period.str()},
			                         {"extremum_theta", e.extremum_theta}});
		}
		json summary_json = json::object();
		for (const auto &s : stats) {
			summary_json[s.name] = stats_json(s.stats);
		}
		json doc = {{"era", name},
		            {"points", rows},
		            {"episodes", episodes_json},
		            {"summary", summary_json},
		            {"partial_periods", periods_json(pairs.partial_periods())}};
		write_file(cfg.out_dir / (name + "_analysis.json"), dump(doc));
	}
	write_recessions(cfg, cfg.out_dir / (name + "_recessions.csv"),
	                 DateRange(points.front().period, points.back().period));
	write_figure_manifest(cfg);
	log << text.str();
}

void cmd_breaks(const RunConfig &cfg, std::ostream &log) {
	cfg.validate();
	const auto era = cfg.era_or_default();
	const auto name = era_name(era);
	const auto pairs = load_built(cfg, era);
	const auto min_seg = fit::min_segment_length(pairs.size(), cfg.breaks.min_seg_fraction);
	const auto search = fit::detect_breaks(pairs, cfg.breaks.max_breaks, min_seg);
	const auto chosen = fit::select_num_breaks(search);
	const auto hyperbola =
		fit::hyperbola_constant(pairs, DateRange(pairs[0].period, pairs[pairs.size() - 1].period));

	auto report = fit::to_json(chosen);
	report["era"] = name;
	report["observations"] = pairs.size();
	report["max_breaks"] = cfg.breaks.max_breaks;
	report["min_segment_length"] = min_seg;
	report["hyperbola_constant"] = {{"A", hyperbola.A},
	                                {"sqrt_A", std::sqrt(hyperbola.A)},
	                                {"dispersion", hyperbola.dispersion}};

	std::ostringstream scatter;
	json scatter_rows = json::array();
	scatter << "period,segment,log_u,log_v,fitted_log_v\n";
	for (std::size_t s = 0; s < chosen.segments.size(); ++s) {
		const auto &seg = chosen.segments[s];
		for (std::size_t i = seg.first; i < seg.last; ++i) {
			const double lu = std::log(pairs[i].u);
			const double lv = std::log(pairs[i].v);
			const double fitted = seg.intercept + seg.elasticity * lu;
			scatter << fmt::format("{},{},{:.6f},{:.6f},{:.6f}\n", pairs[i].period.str(), s + 1, lu, lv, fitted);
			scatter_rows.push_back({{"period", pairs[i].period.str()},
			                        {"segment", s + 1},
			                        {"log_u", lu},
			                        {"log_v", lv},
			                        {"fitted_log_v", fitted}});
		}
	}

	ensure_dir(cfg.out_dir);
	if (cfg.format == OutputFormat::Csv) {
		write_file(cfg.out_dir / (name + "_breaks_scatter.csv"), scatter.str());
	} else {
		report["scatter"] = scatter_rows;
	}
	write_file(cfg.out_dir / (name + "_breaks.json"), dump(report));
	write_figure_manifest(cfg);

	log << fmt::format("{}: {} breaks selected (BIC {:.4f}), minimum segment {} observations\n", name,
	                   chosen.num_breaks, chosen.selection_score, min_seg);
	for (const auto &seg : chosen.segments) {
		log << fmt::format("  {}  elasticity {:.4f}  n={}\n", seg.range.str(), seg.elasticity, seg.n);
	}
	log << fmt::format("  sqrt(A) = {}\n", pct(std::sqrt(hyperbola.A)));
}

void cmd_compare(const RunConfig &cfg, std::ostream &log) {
	cfg.validate();
	const auto era = cfg.era_or_default();
	const auto name = era_name(era);
	const auto pairs = load_built(cfg, era);
	const auto cmp = models::compare_formulas(pairs, cfg.ms16);

	ensure_dir(cfg.out_dir);
	if (cfg.format == OutputFormat::Csv) {
		std::ostringstream table;
		table << "period,u_sqrt,u_ms16,diff\n";
		for (const auto &o : pairs.observations()) {
			const double simple = efficiency::efficient_rate(o.u, o.v);
			const double general = models::ms16_efficient_rate(o.u, o.v, cfg.ms16);
			table << fmt::format("{},{:.4f},{:.4f},{:.4f}\n", o.period.str(), simple, general, general - simple);
		}
		write_file(cfg.out_dir / (name + "_compare.csv"), table.str());
	} else {
		json rows = json::array();
		for (const auto &o : pairs.observations()) {
			const double simple = efficiency::efficient_rate(o.u, o.v);
			const double general = models::ms16_efficient_rate(o.u, o.v, cfg.ms16);
			rows.push_back({{"period", o.period.str()}, {"u_sqrt", simple}, {"u_ms16", general}, {"diff", general - simple}});
		}
		json doc = {{"era", name},
		            {"params", {{"eps", cfg.ms16.eps}, {"zeta", cfg.ms16.zeta}, {"kappa", cfg.ms16.kappa}}},
		            {"rows", rows},
		            {"mean_abs_diff", cmp.mean_abs_diff},
		            {"max_abs_diff", cmp.max_abs_diff},
		            {"max_period", cmp.max_period.label()}};
		write_file(cfg.out_dir / (name + "_compare.json"), dump(doc));
	}
	write_figure_manifest(cfg);
	log << fmt::format("{}: eps={:.4f} zeta={:.4f} kappa={:.4f}\n", name, cfg.ms16.eps, cfg.ms16.zeta, cfg.ms16.kappa);
	log << fmt::format("  mean |diff| {:.2f}pp  max |diff| {:.2f}pp ({})\n", 100.0 * cmp.mean_abs_diff,
	                   100.0 * cmp.max_abs_diff, cmp.max_period.label());
}

void cmd_policy(const RunConfig &cfg, const PolicyArgs &args, std::ostream &log) {
	cfg.validate();
	const double u_star = efficiency::efficient_rate(args.u, args.v);
	const double theta = efficiency::tightness(args.u, args.v);
	const auto rec = models::policy_rate_change({args.i, args.u, u_star, cfg.multiplier});
	if (cfg.format == OutputFormat::Json) {
		const json doc = {{"u", args.u},
		                  {"v", args.v},
		                  {"u_star", u_star},
		                  {"theta", theta},
		                  {"gap_pp", 100.0 * rec.gap},
		                  {"rate_change_pp", 100.0 * rec.rate_change},
		                  {"target_rate_pct", 100.0 * rec.target_rate},
		                  {"zlb_binding", rec.zlb_binding}};
		log << dump(doc);
		return;
	}
	log << fmt::format("efficient unemployment  {:.2f}%\n", 100.0 * u_star);
	log << fmt::format("tightness               {:.4f}\n", theta);
	log << fmt::format("unemployment gap        {:+.2f}pp\n", 100.0 * rec.gap);
	log << fmt::format("recommended change      {:+.2f}pp ({})\n", 100.0 * rec.rate_change,
	                   rec.rate_change > 0.0 ? "raise" : rec.rate_change < 0.0 ? "cut" : "hold");
	log << fmt::format("target rate             {:.2f}%\n", 100.0 * rec.target_rate);
	log << fmt::format("zero lower bound        {}\n", rec.zlb_binding ? "binding" : "not binding");
}

void cmd_simulate(const RunConfig &cfg, const SimulateArgs &args, std::ostream &log) {
	cfg.validate();
	const models::FlowParams fp{args.lambda, args.f};
	const auto path = models::simulate_ode(args.u0, fp, args.dt, args.horizon);

	ensure_dir(cfg.out_dir);
	double max_err = 0.0;
	if (cfg.format == OutputFormat::Csv) {
		std::ostringstream table;
		table << "t,u_analytic,u_numeric\n";
		for (const auto &p : path) {
			const double exact = models::unemployment_path(args.u0, fp, p.t);
			max_err = std::max(max_err, std::abs(exact - p.u));
			table << fmt::format("{:.4f},{:.10f},{:.10f}\n", p.t, exact, p.u);
		}
		write_file(cfg.out_dir / "simulate.csv", table.str());
	} else {
		json rows = json::array();
		for (const auto &p : path) {
			const double exact = models::unemployment_path(args.u0, fp, p.t);
			max_err = std::max(max_err, std::abs(exact - p.u));
			rows.push_back({{"t", p.t}, {"u_analytic", exact}, {"u_numeric", p.u}});
		}
		const json doc = {{"lambda", args.lambda},
		                  {"f", args.f},
		                  {"u0", args.u0},
		                  {"dt", args.dt},
		                  {"half_life", models::half_life(fp)},
		                  {"steady_state", models::steady_state_u(fp)},
		                  {"path", rows}};
		write_file(cfg.out_dir / "simulate.json", dump(doc));
	}
	log << fmt::format("steady state u^b   {:.4f}\n", models::steady_state_u(fp));
	log << fmt::format("half-life          {:.2f} months\n", models::half_life(fp));
	log << fmt::format("max |RK4 - exact|  {:.12f}\n", max_err);
}

} // namespace bevcurve::cli
