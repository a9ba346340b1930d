#include "bevcurve/period.hpp"

#include "bevcurve/error.hpp"

#include <charconv>
#include <fmt/format.h>

namespace bevcurve {

namespace {

std::string_view trim(std::string_view s) {
	while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
		s.remove_prefix(1);
	}
	while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
		s.remove_suffix(1);
	}
	return s;
}

std::optional<int> parse_int(std::string_view s) {
	if (s.empty()) {
		return std::nullopt;
	}
	int value = 0;
	auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
	if (ec != std::errc{} || ptr != s.data() + s.size()) {
		return std::nullopt;
	}
	return value;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
	std::int64_t q = a / b;
	if ((a % b != 0) && ((a < 0) != (b < 0))) {
		--q;
	}
	return q;
}

[[noreturn]] void bad_period(std::string_view text) {
	throw Error(ErrorKind::ParseError, fmt::format("unrecognised period '{}'", text));
}

} // namespace

std::string_view to_string(Frequency f) {
	return f == Frequency::Monthly ? "monthly" : "quarterly";
}

Frequency parse_frequency(std::string_view text) {
	text = trim(text);
	if (text == "monthly" || text == "M" || text == "m") {
		return Frequency::Monthly;
	}
	if (text == "quarterly" || text == "Q" || text == "q") {
		return Frequency::Quarterly;
	}
	throw Error(ErrorKind::ParseError, fmt::format("unknown frequency '{}'", text));
}

Period::Period(Frequency freq, int year, int sub) : freq_(freq), year_(year), sub_(sub) {
	if (sub < 1 || sub > periods_per_year(freq)) {
		throw Error(ErrorKind::DomainError,
		            fmt::format("sub-period {} out of range for {} data", sub, to_string(freq)));
	}
}

Period Period::parse(std::string_view raw, Frequency freq) {
	const auto text = trim(raw);
	if (text.size() < 6) {
		bad_period(raw);
	}
	const auto year = parse_int(text.substr(0, 4));
	if (!year) {
		bad_period(raw);
	}
	const char tag = text[4];
	if (tag == 'Q' || tag == 'q') {
		const auto q = parse_int(text.substr(5));
		if (!q || *q < 1 || *q > 4) {
			bad_period(raw);
		}
		if (freq != Frequency::Quarterly) {
			throw Error(ErrorKind::FrequencyMismatch,
			            fmt::format("quarterly period '{}' in monthly series", text));
		}
		return quarterly(*year, *q);
	}

	std::optional<int> month;
	if (tag == 'M' || tag == 'm') {
		month = parse_int(text.substr(5));
	} else if (tag == '-') {
		const auto rest = text.substr(5);
		const auto dash = rest.find('-');
		month = parse_int(rest.substr(0, dash));
		if (dash != std::string_view::npos) {
			const auto day = parse_int(rest.substr(dash + 1));
			if (!day || *day < 1 || *day > 31) {
				bad_period(raw);
			}
		}
	}
	if (!month || *month < 1 || *month > 12) {
		bad_period(raw);
	}
	if (freq == Frequency::Monthly) {
		return monthly(*year, *month);
	}
	return quarterly(*year, (*month - 1) / 3 + 1);
}

std::int64_t Period::ordinal() const noexcept {
	return static_cast<std::int64_t>(year_) * periods_per_year(freq_) + (sub_ - 1);
}

Period Period::from_ordinal(Frequency freq, std::int64_t ordinal) {
	const int ppy = periods_per_year(freq);
	const auto year = floor_div(ordinal, ppy);
	const auto sub = ordinal - year * ppy + 1;
	return {freq, static_cast<int>(year), static_cast<int>(sub)};
}

Period Period::offset(std::int64_t steps) const {
	return from_ordinal(freq_, ordinal() + steps);
}

std::int64_t Period::distance_to(const Period &other) const {
	if (other.freq_ != freq_) {
		throw Error(ErrorKind::FrequencyMismatch, "distance between periods of different frequency");
	}
	return other.ordinal() - ordinal();
}

Period Period::quarter() const {
	if (freq_ == Frequency::Quarterly) {
		return *this;
	}
	return quarterly(year_, (sub_ - 1) / 3 + 1);
}

std::string Period::str() const {
	if (freq_ == Frequency::Monthly) {
		return fmt::format("{:04d}-{:02d}", year_, sub_);
	}
	return fmt::format("{:04d}Q{}", year_, sub_);
}

std::string Period::label() const {
	return fmt::format("{:04d}{}{}", year_, freq_ == Frequency::Monthly ? 'M' : 'Q', sub_);
}

std::strong_ordering Period::operator<=>(const Period &other) const {
	if (other.freq_ != freq_) {
		throw Error(ErrorKind::FrequencyMismatch, "comparison between periods of different frequency");
	}
	return ordinal() <=> other.ordinal();
}

bool Period::operator==(const Period &other) const {
	return freq_ == other.freq_ && year_ == other.year_ && sub_ == other.sub_;
}

DateRange::DateRange(Period start_, Period end_) : start(start_), end(end_) {
	if (start.frequency() != end.frequency()) {
		throw Error(ErrorKind::FrequencyMismatch, "date range endpoints differ in frequency");
	}
	if (end < start) {
		throw Error(ErrorKind::DomainError,
		            fmt::format("date range start {} after end {}", start.label(), end.label()));
	}
}

std::string DateRange::str() const {
	return start.label() + "-" + end.label();
}

DateRange DateRange::parse(std::string_view text, Frequency freq) {
	auto sep = text.find("..");
	std::size_t skip = 2;
	if (sep == std::string_view::npos) {
		sep = text.find(':');
		skip = 1;
	}
	if (sep == std::string_view::npos) {
		throw Error(ErrorKind::ParseError, fmt::format("date range '{}' needs START..END", text));
	}
	return {Period::parse(text.substr(0, sep), freq), Period::parse(text.substr(sep + skip), freq)};
}

} // namespace bevcurve
