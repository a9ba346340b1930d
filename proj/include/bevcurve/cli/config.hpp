#pragma once

#include "bevcurve/ingest.hpp"
#include "bevcurve/models.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace bevcurve::cli {

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(std::string_view text);

struct BreakSettings {
	std::size_t max_breaks = 7;
	double min_seg_fraction = 0.10;
};

struct RunConfig {
	ingest::DatasetManifest manifest;
	std::optional<ingest::SourceSpec> recessions;
	std::optional<ingest::Era> era;
	std::filesystem::path out_dir = "out";
	OutputFormat format = OutputFormat::Csv;
	double tol = 0.0;
	BreakSettings breaks;
	models::Ms16Params ms16{0.9, 0.26, 0.92};
	double multiplier = 0.5;

	ingest::Era era_or_default() const { return era.value_or(ingest::Era::Postwar); }
	void validate() const;
};

/**
 * Loads an INI-style configuration file.
 *
 * [run] holds era, out, format, tol, max_breaks, min_seg, multiplier and an
 * optional `manifest` path; [ms16] holds eps, zeta, kappa. Each dataset role
 * (unemployment_rate, job_openings, ...) is a section with path, series_id,
 * frequency, value_kind, date_column, value_column and optional units.
 * Role sections may live in the config itself or in the manifest file.
 * Relative paths resolve against the directory of the file they appear in.
 */
RunConfig load_config(const std::filesystem::path &path);

/// Parses only the role sections of a manifest file.
ingest::DatasetManifest load_manifest(const std::filesystem::path &path);

} // namespace bevcurve::cli
