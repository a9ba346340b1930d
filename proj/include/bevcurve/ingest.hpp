#pragma once

#include "bevcurve/period.hpp"
#include "bevcurve/series.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bevcurve::ingest {

enum class Role {
	UnemploymentRate,
	JobOpenings,
	LaborForce,
	HistoricalU,
	HistoricalV,
	BarnichonV,
	Recessions,
};

std::string_view to_string(Role r);
std::optional<Role> parse_role(std::string_view name);
const std::vector<Role> &all_roles();

/// How rate values are scaled in the source file.
enum class Units { Auto, Percent, Fraction };

struct SourceSpec {
	std::filesystem::path path;
	std::string series_id;
	Frequency frequency = Frequency::Monthly;
	ValueKind value_kind = ValueKind::Rate;
	std::string date_column;
	std::string value_column;
	Units units = Units::Auto;
};

struct ParseReport {
	std::string series_id;
	std::filesystem::path path;
	std::size_t rows_read = 0;
	std::size_t rows_skipped = 0;
	/// "percent" when values were divided by 100, "fraction" when used as-is,
	/// "none" for counts.
	std::string normalization;
};

struct ParsedSeries {
	TimeSeries series;
	ParseReport report;
};

/// Reads one value column of a CSV file into a series.
///
/// Blank, ".", "NA" and "#N/A" cells are skipped and counted. Thousands
/// separators in numbers are ignored. For rate columns with Units::Auto the
/// file is treated as percent when every nonzero value exceeds 1, as
/// fractions when none does, and rejected with UnitAmbiguity otherwise.
ParsedSeries parse_csv(const SourceSpec &spec);

struct VacancyRate {
	TimeSeries rate;
	std::vector<std::string> warnings;
};

/// Per-period openings / labor force on the inner join. Ratios >= 1 are kept
/// (the result is then tagged ValueKind::Real) and reported as warnings.
VacancyRate vacancy_rate_from_openings(const TimeSeries &openings, const TimeSeries &labor_force);

using DatasetManifest = std::map<Role, SourceSpec>;

/// Peak-to-trough recession ranges at monthly frequency.
struct RecessionCalendar {
	std::vector<DateRange> ranges;

	explicit RecessionCalendar(std::vector<DateRange> r = {});
	bool contains(const Period &p) const;
};

/// The recession file has one row per recession; date_column names the peak
/// column and value_column the trough column.
RecessionCalendar parse_recessions(const SourceSpec &spec);

enum class Era { Postwar, Pandemic, Historical, Full };

std::string_view to_string(Era e);
Era parse_era(std::string_view text);
/// Fixed sample window of each era.
DateRange era_range(Era e);
Frequency era_frequency(Era e);
std::vector<Role> required_roles(Era e);

/// First quarter measured by job openings over the labor force rather than
/// the historical help-wanted composite.
Period openings_splice_start();

struct BuildReport {
	Era era;
	std::vector<ParseReport> sources;
	std::vector<ProvenanceEntry> u_provenance;
	std::vector<ProvenanceEntry> v_provenance;
	std::vector<Period> partial_periods;
	std::size_t dropped_nonpositive = 0;
	std::vector<std::string> warnings;
};

struct Dataset {
	PairedSeries pairs;
	BuildReport report;
};

/// Assembles the (u, v) panel for an era: parses sources, averages monthly
/// series to quarters where the era is quarterly, splices the vacancy
/// sources, restricts to the era window and aligns.
Dataset build_dataset(const DatasetManifest &manifest, Era era);

/// Canonical dataset CSV: header "period,u,v", fractions at 6 decimals.
void write_dataset_csv(const PairedSeries &pairs, const std::filesystem::path &path);
/// Reads a canonical dataset CSV back into a paired series.
PairedSeries read_dataset_csv(const std::filesystem::path &path, Frequency freq);

} // namespace bevcurve::ingest
