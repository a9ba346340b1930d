#include "bevcurve/cli/config.hpp"

#include "bevcurve/error.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace bevcurve::cli {

namespace pt = boost::property_tree;

namespace {

pt::ptree read_ini(const std::filesystem::path &path) {
	pt::ptree tree;
	try {
		pt::read_ini(path.string(), tree);
	} catch (const pt::ini_parser_error &e) {
		throw Error(ErrorKind::ParseError, fmt::format("config {}: {}", path.string(), e.what()));
	}
	return tree;
}

template <typename T>
T get(const pt::ptree &section, const std::string &key, const std::string &where) {
	try {
		return section.get<T>(key);
	} catch (const pt::ptree_error &) {
		throw Error(ErrorKind::ParseError, fmt::format("{}: missing or invalid '{}'", where, key));
	}
}

template <typename T>
std::optional<T> get_optional(const pt::ptree &section, const std::string &key, const std::string &where) {
	if (!section.get_child_optional(key)) {
		return std::nullopt;
	}
	return get<T>(section, key, where);
}

std::filesystem::path resolve(const std::filesystem::path &base, const std::string &p) {
	std::filesystem::path path(p);
	return path.is_absolute() ? path : base / path;
}

ingest::SourceSpec parse_source(const pt::ptree &section, const std::string &name,
                                const std::filesystem::path &base) {
	ingest::SourceSpec spec;
	const auto where = fmt::format("[{}]", name);
	spec.path = resolve(base, get<std::string>(section, "path", where));
	spec.series_id = section.get<std::string>("series_id", name);
	spec.frequency = parse_frequency(section.get<std::string>("frequency", "monthly"));
	const auto kind = section.get<std::string>("value_kind", "rate");
	if (kind == "rate") {
		spec.value_kind = ValueKind::Rate;
	} else if (kind == "count") {
		spec.value_kind = ValueKind::Count;
	} else {
		throw Error(ErrorKind::ParseError, fmt::format("{}: value_kind must be rate or count", where));
	}
	spec.date_column = get<std::string>(section, "date_column", where);
	spec.value_column = get<std::string>(section, "value_column", where);
	const auto units = section.get<std::string>("units", "auto");
	if (units == "auto") {
		spec.units = ingest::Units::Auto;
	} else if (units == "percent") {
		spec.units = ingest::Units::Percent;
	} else if (units == "fraction") {
		spec.units = ingest::Units::Fraction;
	} else {
		throw Error(ErrorKind::ParseError, fmt::format("{}: units must be auto, percent or fraction", where));
	}
	return spec;
}

void read_roles(const pt::ptree &tree, const std::filesystem::path &base, RunConfig &cfg) {
	for (const auto &[name, section] : tree) {
		const auto role = ingest::parse_role(name);
		if (!role) {
			continue;
		}
		auto spec = parse_source(section, name, base);
		if (*role == ingest::Role::Recessions) {
			cfg.recessions = std::move(spec);
		} else {
			cfg.manifest[*role] = std::move(spec);
		}
	}
}

} // namespace

OutputFormat parse_format(std::string_view text) {
	if (text == "csv") {
		return OutputFormat::Csv;
	}
	if (text == "json") {
		return OutputFormat::Json;
	}
	throw Error(ErrorKind::UsageError, fmt::format("unknown format '{}'", text));
}

void RunConfig::validate() const {
	if (!(tol >= 0.0)) {
		throw Error(ErrorKind::UsageError, "tol must be >= 0");
	}
	if (!(breaks.min_seg_fraction > 0.0 && breaks.min_seg_fraction <= 0.5)) {
		throw Error(ErrorKind::UsageError, "min_seg must lie in (0, 0.5]");
	}
	if (!(multiplier > 0.0)) {
		throw Error(ErrorKind::UsageError, "multiplier must be positive");
	}
	try {
		ms16.validate();
	} catch (const Error &e) {
		throw Error(ErrorKind::UsageError, e.what());
	}
}

ingest::DatasetManifest load_manifest(const std::filesystem::path &path) {
	RunConfig cfg;
	read_roles(read_ini(path), path.parent_path(), cfg);
	return cfg.manifest;
}

static RunConfig load_config_sections(const std::filesystem::path &path) {
	const auto tree = read_ini(path);
	const auto base = path.parent_path();
	RunConfig cfg;

	if (const auto run = tree.get_child_optional("run")) {
		const std::string where = "[run]";
		if (auto era = get_optional<std::string>(*run, "era", where)) {
			cfg.era = ingest::parse_era(*era);
		}
		if (auto out = get_optional<std::string>(*run, "out", where)) {
			cfg.out_dir = resolve(base, *out);
		}
		if (auto format = get_optional<std::string>(*run, "format", where)) {
			cfg.format = parse_format(*format);
		}
		cfg.tol = get_optional<double>(*run, "tol", where).value_or(cfg.tol);
		cfg.breaks.max_breaks = get_optional<std::size_t>(*run, "max_breaks", where).value_or(cfg.breaks.max_breaks);
		cfg.breaks.min_seg_fraction = get_optional<double>(*run, "min_seg", where).value_or(cfg.breaks.min_seg_fraction);
		cfg.multiplier = get_optional<double>(*run, "multiplier", where).value_or(cfg.multiplier);
		if (auto manifest = get_optional<std::string>(*run, "manifest", where)) {
			const auto manifest_path = resolve(base, *manifest);
			read_roles(read_ini(manifest_path), manifest_path.parent_path(), cfg);
		}
	}
	if (const auto ms16 = tree.get_child_optional("ms16")) {
		cfg.ms16.eps = get_optional<double>(*ms16, "eps", "[ms16]").value_or(cfg.ms16.eps);
		cfg.ms16.zeta = get_optional<double>(*ms16, "zeta", "[ms16]").value_or(cfg.ms16.zeta);
		cfg.ms16.kappa = get_optional<double>(*ms16, "kappa", "[ms16]").value_or(cfg.ms16.kappa);
	}
	read_roles(tree, base, cfg);
	return cfg;
}

RunConfig load_config(const std::filesystem::path &path) {
	try {
		return load_config_sections(path);
	} catch (const pt::ptree_error &e) {
		throw Error(ErrorKind::ParseError, fmt::format("config {}: {}", path.string(), e.what()));
	}
}

} // namespace bevcurve::cli
