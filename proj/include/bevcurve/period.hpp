#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace bevcurve {

enum class Frequency { Monthly, Quarterly };

std::string_view to_string(Frequency f);
Frequency parse_frequency(std::string_view text);

/// Number of sub-periods per calendar year (12 or 4).
constexpr int periods_per_year(Frequency f) {
	return f == Frequency::Monthly ? 12 : 4;
}

/**
 * A calendar month or quarter, stored as (year, sub-period index).
 *
 * Sub-period indices are 1-based: months 1..12, quarters 1..4. Periods of
 * different frequencies are never compared; doing so throws
 * FrequencyMismatch.
 */
class Period {
public:
	Period(Frequency freq, int year, int sub);

	static Period monthly(int year, int month) { return {Frequency::Monthly, year, month}; }
	static Period quarterly(int year, int quarter) { return {Frequency::Quarterly, year, quarter}; }

	/// Parses "YYYY-MM-DD", "YYYY-MM", "YYYYQn" or "YYYYMn". Dates are mapped
	/// onto the requested frequency (a month maps to its quarter).
	static Period parse(std::string_view text, Frequency freq);

	Frequency frequency() const noexcept { return freq_; }
	int year() const noexcept { return year_; }
	int sub() const noexcept { return sub_; }

	/// Linear index: year * periods_per_year + (sub - 1).
	std::int64_t ordinal() const noexcept;
	static Period from_ordinal(Frequency freq, std::int64_t ordinal);

	Period next() const { return offset(1); }
	Period prev() const { return offset(-1); }
	Period offset(std::int64_t steps) const;

	/// Signed distance in sub-periods, other - *this.
	std::int64_t distance_to(const Period &other) const;

	/// Quarter containing a monthly period; identity on quarterly periods.
	Period quarter() const;

	/// Canonical text: "2020-04" (monthly) or "2020Q2" (quarterly).
	std::string str() const;
	/// Short label used in reports: "2020M4" or "2020Q2".
	std::string label() const;

	std::strong_ordering operator<=>(const Period &other) const;
	bool operator==(const Period &other) const;

private:
	Frequency freq_;
	int year_;
	int sub_;
};

/// Inclusive range of periods of a single frequency.
struct DateRange {
	Period start;
	Period end;

	DateRange(Period start_, Period end_);

	bool contains(const Period &p) const { return start <= p && p <= end; }
	Frequency frequency() const { return start.frequency(); }
	std::int64_t length() const { return start.distance_to(end) + 1; }
	std::string str() const;

	/// Parses "START..END" or "START:END" using Period::parse.
	static DateRange parse(std::string_view text, Frequency freq);

	bool operator==(const DateRange &) const = default;
};

} // namespace bevcurve
