#include "bevcurve/ingest.hpp"

#include "bevcurve/csv.hpp"
#include "bevcurve/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>

namespace bevcurve::ingest {

namespace {

constexpr std::array<std::pair<Role, std::string_view>, 7> kRoleNames{{
	{Role::UnemploymentRate, "unemployment_rate"},
	{Role::JobOpenings, "job_openings"},
	{Role::LaborForce, "labor_force"},
	{Role::HistoricalU, "historical_u"},
	{Role::HistoricalV, "historical_v"},
	{Role::BarnichonV, "barnichon_v"},
	{Role::Recessions, "recessions"},
}};

std::string trim(std::string_view s) {
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
		s.remove_prefix(1);
	}
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
		s.remove_suffix(1);
	}
	return std::string(s);
}

bool is_missing(const std::string &cell) {
	return cell.empty() || cell == "." || cell == "NA" || cell == "#N/A" || cell == "NaN";
}

std::optional<double> parse_number(std::string cell) {
	std::erase(cell, ',');
	if (cell.empty()) {
		return std::nullopt;
	}
	const char *first = cell.data();
	if (*first == '+') {
		++first;
	}
	double value = 0.0;
	auto [ptr, ec] = std::from_chars(first, cell.data() + cell.size(), value);
	if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
		return std::nullopt;
	}
	return value;
}

std::size_t find_column(const csv::Record &header, const std::string &name, const std::filesystem::path &path) {
	for (std::size_t i = 0; i < header.fields.size(); ++i) {
		if (trim(header.fields[i]) == name) {
			return i;
		}
	}
	throw Error(ErrorKind::SchemaError, fmt::format("{}: no column named '{}'", path.string(), name));
}

std::vector<csv::Record> load_records(const std::filesystem::path &path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw Error(ErrorKind::IoError, fmt::format("cannot open {}", path.string()));
	}
	auto records = csv::read(in);
	if (records.empty()) {
		throw Error(ErrorKind::SchemaError, fmt::format("{}: missing header row", path.string()));
	}
	return records;
}

const SourceSpec &require(const DatasetManifest &m, Role r) {
	auto it = m.find(r);
	if (it == m.end()) {
		throw Error(ErrorKind::MissingRole, fmt::format("manifest has no source for role '{}'", to_string(r)));
	}
	return it->second;
}

TimeSeries to_quarterly(const TimeSeries &s) {
	return s.frequency() == Frequency::Quarterly ? s : monthly_to_quarterly(s);
}

DateRange quarters(int y0, int q0, int y1, int q1) {
	return {Period::quarterly(y0, q0), Period::quarterly(y1, q1)};
}

} // namespace

std::string_view to_string(Role r) {
	for (const auto &[role, name] : kRoleNames) {
		if (role == r) {
			return name;
		}
	}
	return "unknown";
}

std::optional<Role> parse_role(std::string_view name) {
	for (const auto &[role, n] : kRoleNames) {
		if (n == name) {
			return role;
		}
	}
	return std::nullopt;
}

const std::vector<Role> &all_roles() {
	static const std::vector<Role> roles = [] {
		std::vector<Role> out;
		for (const auto &entry : kRoleNames) {
			out.push_back(entry.first);
		}
		return out;
	}();
	return roles;
}

ParsedSeries parse_csv(const SourceSpec &spec) {
	if (spec.date_column.empty() || spec.value_column.empty()) {
		throw Error(ErrorKind::SchemaError, fmt::format("{}: date and value columns must be named", spec.series_id));
	}
	const auto records = load_records(spec.path);
	const auto date_col = find_column(records.front(), spec.date_column, spec.path);
	const auto value_col = find_column(records.front(), spec.value_column, spec.path);

	ParseReport report{spec.series_id, spec.path, 0, 0, "none"};
	std::vector<Observation> obs;
	for (std::size_t r = 1; r < records.size(); ++r) {
		const auto &rec = records[r];
		++report.rows_read;
		const std::string date = rec.fields.size() > date_col ? trim(rec.fields[date_col]) : std::string{};
		const std::string cell = rec.fields.size() > value_col ? trim(rec.fields[value_col]) : std::string{};
		if (is_missing(cell)) {
			++report.rows_skipped;
			continue;
		}
		std::optional<Period> period;
		try {
			period = Period::parse(date, spec.frequency);
		} catch (const Error &e) {
			throw Error(ErrorKind::ParseError,
			            fmt::format("{} line {}: bad date '{}' ({})", spec.path.string(), rec.line, date, e.what()));
		}
		const auto value = parse_number(cell);
		if (!value) {
			throw Error(ErrorKind::ParseError,
			            fmt::format("{} line {}: bad number '{}'", spec.path.string(), rec.line, cell));
		}
		if (!obs.empty() && !(obs.back().period < *period)) {
			throw Error(ErrorKind::ParseError, fmt::format("{} line {}: period {} out of order or duplicated",
			                                               spec.path.string(), rec.line, period->label()));
		}
		obs.push_back({*period, *value});
	}

	if (spec.value_kind == ValueKind::Rate) {
		bool percent = spec.units == Units::Percent;
		if (spec.units == Units::Auto) {
			std::size_t above = 0;
			std::size_t below = 0;
			for (const auto &o : obs) {
				const double mag = std::abs(o.value);
				if (mag > 1.0) {
					++above;
				} else if (mag > 0.0) {
					++below;
				}
			}
			if (above > 0 && below > 0) {
				throw Error(ErrorKind::UnitAmbiguity,
				            fmt::format("{}: {} values exceed 1 and {} do not; set units explicitly",
				                        spec.path.string(), above, below));
			}
			percent = above > 0;
		}
		if (percent) {
			for (auto &o : obs) {
				o.value /= 100.0;
			}
		}
		report.normalization = percent ? "percent" : "fraction";
	}

	const auto label = spec.series_id.empty() ? spec.value_column : spec.series_id;
	return {TimeSeries(spec.frequency, spec.value_kind, label, std::move(obs)), std::move(report)};
}

VacancyRate vacancy_rate_from_openings(const TimeSeries &openings, const TimeSeries &labor_force) {
	if (openings.frequency() != labor_force.frequency()) {
		throw Error(ErrorKind::FrequencyMismatch, "openings and labor force differ in frequency");
	}
	std::vector<Observation> out;
	std::vector<std::string> warnings;
	bool implausible = false;
	for (const auto &o : openings.observations()) {
		const auto lf = labor_force.at(o.period);
		if (!lf) {
			continue;
		}
		if (*lf == 0.0) {
			throw Error(ErrorKind::DivisionByZero, fmt::format("labor force is zero at {}", o.period.label()));
		}
		const double rate = o.value / *lf;
		if (rate >= 1.0) {
			implausible = true;
			warnings.push_back(fmt::format("implausible vacancy rate {:.4f} at {}", rate, o.period.label()));
		}
		out.push_back({o.period, rate});
	}
	if (out.empty()) {
		throw Error(ErrorKind::NoOverlap,
		            fmt::format("{} and {} share no periods", openings.label(), labor_force.label()));
	}
	const auto kind = implausible ? ValueKind::Real : ValueKind::Rate;
	const auto label = fmt::format("{}/{}", openings.label(), labor_force.label());
	return {TimeSeries(openings.frequency(), kind, label, std::move(out)), std::move(warnings)};
}

RecessionCalendar::RecessionCalendar(std::vector<DateRange> r) : ranges(std::move(r)) {
	for (std::size_t i = 0; i < ranges.size(); ++i) {
		if (ranges[i].frequency() != Frequency::Monthly) {
			throw Error(ErrorKind::FrequencyMismatch, "recession ranges must be monthly");
		}
		if (i > 0 && !(ranges[i - 1].end < ranges[i].start)) {
			throw Error(ErrorKind::InvalidSeries,
			            fmt::format("recession {} overlaps or precedes {}", ranges[i].str(), ranges[i - 1].str()));
		}
	}
}

bool RecessionCalendar::contains(const Period &p) const {
	const Period m = p.frequency() == Frequency::Monthly ? p : Period::monthly(p.year(), 3 * (p.sub() - 1) + 1);
	if (p.frequency() == Frequency::Quarterly) {
		for (int k = 0; k < 3; ++k) {
			const Period month = m.offset(k);
			for (const auto &r : ranges) {
				if (r.contains(month)) {
					return true;
				}
			}
		}
		return false;
	}
	return std::any_of(ranges.begin(), ranges.end(), [&](const DateRange &r) { return r.contains(m); });
}

RecessionCalendar parse_recessions(const SourceSpec &spec) {
	const auto records = load_records(spec.path);
	const auto peak_col = find_column(records.front(), spec.date_column, spec.path);
	const auto trough_col = find_column(records.front(), spec.value_column, spec.path);
	std::vector<DateRange> ranges;
	for (std::size_t r = 1; r < records.size(); ++r) {
		const auto &rec = records[r];
		if (rec.fields.size() <= std::max(peak_col, trough_col)) {
			throw Error(ErrorKind::ParseError, fmt::format("{} line {}: short row", spec.path.string(), rec.line));
		}
		try {
			ranges.emplace_back(Period::parse(rec.fields[peak_col], Frequency::Monthly),
			                    Period::parse(rec.fields[trough_col], Frequency::Monthly));
		} catch (const Error &e) {
			throw Error(ErrorKind::ParseError, fmt::format("{} line {}: {}", spec.path.string(), rec.line, e.what()));
		}
	}
	return RecessionCalendar(std::move(ranges));
}

std::string_view to_string(Era e) {
	switch (e) {
	case Era::Postwar: return "postwar";
	case Era::Pandemic: return "pandemic";
	case Era::Historical: return "historical";
	case Era::Full: return "full";
	}
	return "postwar";
}

Era parse_era(std::string_view text) {
	for (Era e : {Era::Postwar, Era::Pandemic, Era::Historical, Era::Full}) {
		if (to_string(e) == text) {
			return e;
		}
	}
	throw Error(ErrorKind::UsageError, fmt::format("unknown era '{}'", text));
}

DateRange era_range(Era e) {
	switch (e) {
	case Era::Postwar: return quarters(1951, 1, 2019, 4);
	case Era::Pandemic: return {Period::monthly(2020, 1), Period::monthly(2022, 3)};
	case Era::Historical: return quarters(1930, 1, 1950, 4);
	case Era::Full: return quarters(1930, 1, 2022, 1);
	}
	return quarters(1951, 1, 2019, 4);
}

Frequency era_frequency(Era e) {
	return e == Era::Pandemic ? Frequency::Monthly : Frequency::Quarterly;
}

std::vector<Role> required_roles(Era e) {
	switch (e) {
	case Era::Postwar: return {Role::UnemploymentRate, Role::BarnichonV, Role::JobOpenings, Role::LaborForce};
	case Era::Pandemic: return {Role::UnemploymentRate, Role::JobOpenings, Role::LaborForce};
	case Era::Historical: return {Role::HistoricalU, Role::HistoricalV};
	case Era::Full:
		return {Role::HistoricalU, Role::HistoricalV, Role::UnemploymentRate, Role::BarnichonV, Role::JobOpenings,
		        Role::LaborForce};
	}
	return {};
}

Period openings_splice_start() {
	return Period::quarterly(2001, 1);
}

Dataset build_dataset(const DatasetManifest &manifest, Era era) {
	for (Role r : required_roles(era)) {
		require(manifest, r);
	}

	BuildReport report{era, {}, {}, {}, {}, 0, {}};
	auto load = [&](Role r) {
		auto parsed = parse_csv(require(manifest, r));
		report.sources.push_back(parsed.report);
		return std::move(parsed.series);
	};

	const DateRange window = era_range(era);
	const DateRange historical = era_range(Era::Historical);
	const Period modern_start = Period::quarterly(1951, 1);

	std::optional<TimeSeries> u;
	std::optional<TimeSeries> v;

	std::optional<TimeSeries> openings_rate;
	if (era != Era::Historical) {
		const auto openings = load(Role::JobOpenings);
		const auto labor_force = load(Role::LaborForce);
		auto vr = vacancy_rate_from_openings(openings, labor_force);
		report.warnings.insert(report.warnings.end(), vr.warnings.begin(), vr.warnings.end());
		openings_rate = std::move(vr.rate);
	}

	switch (era) {
	case Era::Pandemic: {
		const auto unrate = load(Role::UnemploymentRate);
		if (unrate.frequency() != Frequency::Monthly || openings_rate->frequency() != Frequency::Monthly) {
			throw Error(ErrorKind::FrequencyMismatch, "the pandemic era needs monthly unemployment and openings");
		}
		u = unrate.restrict(window);
		v = openings_rate->restrict(window);
		break;
	}
	case Era::Historical: {
		u = to_quarterly(load(Role::HistoricalU)).restrict(window);
		v = to_quarterly(load(Role::HistoricalV)).restrict(window);
		break;
	}
	case Era::Postwar:
	case Era::Full: {
		const auto unrate_q = to_quarterly(load(Role::UnemploymentRate));
		const auto barnichon_q = to_quarterly(load(Role::BarnichonV));
		const auto openings_q = to_quarterly(*openings_rate);
		const DateRange barnichon_range(modern_start, openings_splice_start().prev());
		const DateRange openings_range(openings_splice_start(), window.end);

		std::vector<std::pair<DateRange, TimeSeries>> u_parts;
		std::vector<std::pair<DateRange, TimeSeries>> v_parts;
		if (era == Era::Full) {
			u_parts.emplace_back(historical, to_quarterly(load(Role::HistoricalU)));
			v_parts.emplace_back(historical, to_quarterly(load(Role::HistoricalV)));
		}
		u_parts.emplace_back(DateRange(modern_start, window.end), unrate_q);
		v_parts.emplace_back(barnichon_range, barnichon_q);
		v_parts.emplace_back(openings_range, openings_q);
		u = splice(u_parts);
		v = splice(v_parts);
		break;
	}
	}

	report.u_provenance = u->provenance();
	report.v_provenance = v->provenance();
	auto aligned = align(*u, *v);
	report.dropped_nonpositive = aligned.dropped_nonpositive;
	report.partial_periods = aligned.pairs.partial_periods();
	if (aligned.dropped_nonpositive > 0) {
		report.warnings.push_back(
			fmt::format("dropped {} observations with non-positive rates", aligned.dropped_nonpositive));
	}
	return {std::move(aligned.pairs), std::move(report)};
}

void write_dataset_csv(const PairedSeries &pairs, const std::filesystem::path &path) {
	std::ofstream out(path, std::ios::binary);
	if (!out) {
		throw Error(ErrorKind::IoError, fmt::format("cannot write {}", path.string()));
	}
	out << "period,u,v\n";
	for (const auto &o : pairs.observations()) {
		out << fmt::format("{},{:.6f},{:.6f}\n", o.period.str(), o.u, o.v);
	}
}

PairedSeries read_dataset_csv(const std::filesystem::path &path, Frequency freq) {
	SourceSpec spec{path, "u", freq, ValueKind::Rate, "period", "u", Units::Fraction};
	const auto u = parse_csv(spec).series;
	spec.series_id = "v";
	spec.value_column = "v";
	const auto v = parse_csv(spec).series;
	return align(u, v).pairs;
}

} // namespace bevcurve::ingest
