#include "bevcurve/error.hpp"
#include "bevcurve/period.hpp"
#include "bevcurve/series.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <functional>

#include <random>

using namespace bevcurve;
using Catch::Approx;

namespace {

TimeSeries monthly(int year, int month, std::vector<double> values, ValueKind kind = ValueKind::Rate) {
	std::vector<Observation> obs;
	Period p = Period::monthly(year, month);
	for (double v : values) {
		obs.push_back({p, v});
		p = p.next();
	}
	return {Frequency::Monthly, kind, "test", std::move(obs)};
}

TimeSeries quarterly(int year, int q, std::vector<double> values, ValueKind kind = ValueKind::Real) {
	std::vector<Observation> obs;
	Period p = Period::quarterly(year, q);
	for (double v : values) {
		obs.push_back({p, v});
		p = p.next();
	}
	return {Frequency::Quarterly, kind, "test", std::move(obs)};
}

ErrorKind kind_of(const std::function<void()> &fn) {
	try {
		fn();
	} catch (const Error &e) {
		return e.kind();
	}
	FAIL("expected an Error");
	return ErrorKind::UsageError;
}

} // namespace

TEST_CASE("Period parsing accepts the supported date layouts", "[period]") {
	CHECK(Period::parse("2020-04-01", Frequency::Monthly) == Period::monthly(2020, 4));
	CHECK(Period::parse("2020-04", Frequency::Monthly) == Period::monthly(2020, 4));
	CHECK(Period::parse("2020M4", Frequency::Monthly) == Period::monthly(2020, 4));
	CHECK(Period::parse(" 2020M12 ", Frequency::Monthly) == Period::monthly(2020, 12));
	CHECK(Period::parse("1953Q1", Frequency::Quarterly) == Period::quarterly(1953, 1));
	CHECK(Period::parse("2020-05-01", Frequency::Quarterly) == Period::quarterly(2020, 2));

	CHECK(kind_of([] { Period::parse("2020Q5", Frequency::Quarterly); }) == ErrorKind::ParseError);
	CHECK(kind_of([] { Period::parse("2020-13", Frequency::Monthly); }) == ErrorKind::ParseError);
	CHECK(kind_of([] { Period::parse("20-01", Frequency::Monthly); }) == ErrorKind::ParseError);
	CHECK(kind_of([] { Period::parse("2020Q1", Frequency::Monthly); }) == ErrorKind::FrequencyMismatch);
}

TEST_CASE("Period arithmetic and labels", "[period]") {
	const auto p = Period::monthly(2019, 12);
	CHECK(p.next() == Period::monthly(2020, 1));
	CHECK(p.next().prev() == p);
	CHECK(Period::quarterly(1951, 1).distance_to(Period::quarterly(2019, 4)) == 275);
	CHECK(Period::monthly(2020, 1).distance_to(Period::monthly(2022, 3)) == 26);
	CHECK(Period::monthly(2020, 5).quarter() == Period::quarterly(2020, 2));
	CHECK(p.str() == "2019-12");
	CHECK(p.label() == "2019M12");
	CHECK(Period::quarterly(2009, 3).str() == "2009Q3");
	CHECK(Period::from_ordinal(Frequency::Quarterly, Period::quarterly(1930, 1).ordinal()) == Period::quarterly(1930, 1));
	CHECK_THROWS_AS(Period::monthly(2020, 1) < Period::quarterly(2020, 1), Error);
	CHECK_THROWS_AS(DateRange(Period::quarterly(2020, 2), Period::quarterly(2020, 1)), Error);
}

TEST_CASE("TimeSeries enforces its invariants", "[series]") {
	CHECK(kind_of([] {
		TimeSeries(Frequency::Monthly, ValueKind::Rate, "x",
		           {{Period::monthly(2020, 2), 0.1}, {Period::monthly(2020, 1), 0.1}});
	}) == ErrorKind::InvalidSeries);
	CHECK(kind_of([] {
		TimeSeries(Frequency::Monthly, ValueKind::Rate, "x",
		           {{Period::monthly(2020, 1), 0.1}, {Period::monthly(2020, 1), 0.1}});
	}) == ErrorKind::InvalidSeries);
	CHECK(kind_of([] { monthly(2020, 1, {1.2}); }) == ErrorKind::InvalidSeries);
	CHECK(kind_of([] { monthly(2020, 1, {std::nan("")}, ValueKind::Real); }) == ErrorKind::InvalidSeries);
	CHECK(kind_of([] { monthly(2020, 1, {-1.0}, ValueKind::Count); }) == ErrorKind::InvalidSeries);
	CHECK(kind_of([] {
		PairedSeries(Frequency::Quarterly, {{Period::quarterly(2020, 1), 0.05, 0.0}});
	}) == ErrorKind::DomainError);
}

TEST_CASE("monthly_to_quarterly averages months and flags partial quarters", "[series][aggregate]") {
	SECTION("three months of 2020Q1") {
		const auto q = monthly_to_quarterly(monthly(2020, 1, {0.036, 0.035, 0.044}));
		REQUIRE(q.size() == 1);
		CHECK(q.front().period == Period::quarterly(2020, 1));
		CHECK(q.front().value == Approx(0.115 / 3.0).epsilon(1e-14));
		CHECK(q.partial_periods().empty());
	}
	SECTION("a single month is a partial quarter") {
		const auto q = monthly_to_quarterly(monthly(1930, 1, {0.05}));
		REQUIRE(q.size() == 1);
		CHECK(q.front().value == 0.05);
		CHECK(q.is_partial(Period::quarterly(1930, 1)));
	}
	SECTION("constant series stays constant") {
		const auto q = monthly_to_quarterly(monthly(2001, 1, std::vector<double>(12, 0.042)));
		REQUIRE(q.size() == 4);
		for (const auto &o : q.observations()) {
			CHECK(o.value == Approx(0.042).epsilon(1e-15));
		}
		CHECK(q.partial_periods().empty());
	}
	SECTION("quarters with no months are omitted") {
		std::vector<Observation> obs{{Period::monthly(2020, 1), 0.1}, {Period::monthly(2020, 8), 0.2}};
		const auto q = monthly_to_quarterly(TimeSeries(Frequency::Monthly, ValueKind::Rate, "gappy", obs));
		REQUIRE(q.size() == 2);
		CHECK(q.observations()[0].period == Period::quarterly(2020, 1));
		CHECK(q.observations()[1].period == Period::quarterly(2020, 3));
		CHECK(q.partial_periods().size() == 2);
	}
	SECTION("errors") {
		CHECK(kind_of([] { monthly_to_quarterly(TimeSeries(Frequency::Monthly, ValueKind::Rate, "e", {})); }) ==
		      ErrorKind::EmptySeries);
		CHECK(kind_of([] { monthly_to_quarterly(quarterly(2020, 1, {0.1})); }) == ErrorKind::FrequencyMismatch);
	}
}

TEST_CASE("monthly_to_quarterly commutes with affine maps", "[series][aggregate][property]") {
	std::mt19937 rng(7);
	std::uniform_real_distribution<double> val(-1.0, 1.0);
	std::uniform_int_distribution<int> len(1, 40);
	for (int rep = 0; rep < 200; ++rep) {
		const int n = len(rng);
		std::vector<double> xs(static_cast<std::size_t>(n));
		for (auto &x : xs) {
			x = val(rng);
		}
		const double a = 3.0 * val(rng);
		const double b = val(rng);
		std::vector<double> ys;
		for (double x : xs) {
			ys.push_back(a * x + b);
		}
		const auto qx = monthly_to_quarterly(monthly(2000, 1 + rep % 12, xs, ValueKind::Real));
		const auto qy = monthly_to_quarterly(monthly(2000, 1 + rep % 12, ys, ValueKind::Real));
		REQUIRE(qx.size() == qy.size());
		for (std::size_t i = 0; i < qx.size(); ++i) {
			CHECK(qy.observations()[i].value == Approx(a * qx.observations()[i].value + b).margin(1e-12));
		}
		CHECK(qx.partial_periods() == qy.partial_periods());
	}
}

TEST_CASE("splice concatenates ranges without filling gaps", "[series][splice]") {
	const auto a = quarterly(1930, 1, std::vector<double>(84, 1.0));   // 1930Q1-1950Q4
	const auto b = quarterly(1940, 1, std::vector<double>(320, 2.0));  // 1940Q1-2019Q4
	const auto c = quarterly(2000, 1, std::vector<double>(90, 3.0));   // 2000Q1-2022Q2

	SECTION("three sources into one 1930-2022 series") {
		std::vector<std::pair<DateRange, TimeSeries>> parts{
			{DateRange(Period::quarterly(1930, 1), Period::quarterly(1950, 4)), a.relabel("historical")},
			{DateRange(Period::quarterly(1951, 1), Period::quarterly(2000, 4)), b.relabel("composite")},
			{DateRange(Period::quarterly(2001, 1), Period::quarterly(2022, 1)), c.relabel("openings")},
		};
		const auto s = splice(parts);
		CHECK(s.front().period == Period::quarterly(1930, 1));
		CHECK(s.back().period == Period::quarterly(2022, 1));
		CHECK(s.size() == 369);
		CHECK(*s.at(Period::quarterly(1950, 4)) == 1.0);
		CHECK(*s.at(Period::quarterly(1951, 1)) == 2.0);
		CHECK(*s.at(Period::quarterly(2001, 1)) == 3.0);
		REQUIRE(s.provenance().size() == 3);
		CHECK(s.provenance()[1].label == "composite");
		CHECK(s.provenance()[2].range.start == Period::quarterly(2001, 1));
	}
	SECTION("single covering segment is the identity") {
		std::vector<std::pair<DateRange, TimeSeries>> parts{{DateRange(a.front().period, a.back().period), a}};
		const auto s = splice(parts);
		CHECK(std::equal(s.observations().begin(), s.observations().end(), a.observations().begin(),
		                 a.observations().end()));
	}
	SECTION("a one-quarter gap stays a gap") {
		std::vector<std::pair<DateRange, TimeSeries>> parts{
			{DateRange(Period::quarterly(1930, 1), Period::quarterly(1940, 4)), a},
			{DateRange(Period::quarterly(1941, 2), Period::quarterly(1950, 4)), b},
		};
		const auto s = splice(parts);
		CHECK_FALSE(s.at(Period::quarterly(1941, 1)).has_value());
		CHECK(s.size() == 44 + 39);
	}
	SECTION("overlap and frequency mismatch") {
		std::vector<std::pair<DateRange, TimeSeries>> overlap{
			{DateRange(Period::quarterly(1930, 1), Period::quarterly(1945, 4)), a},
			{DateRange(Period::quarterly(1945, 4), Period::quarterly(1950, 4)), b},
		};
		CHECK(kind_of([&] { splice(overlap); }) == ErrorKind::SpliceOverlap);
		std::vector<std::pair<DateRange, TimeSeries>> mixed{
			{DateRange(Period::quarterly(1930, 1), Period::quarterly(1945, 4)), a},
			{DateRange(Period::monthly(1946, 1), Period::monthly(1950, 12)), monthly(1946, 1, {0.1})},
		};
		CHECK(kind_of([&] { splice(mixed); }) == ErrorKind::FrequencyMismatch);
	}
}

TEST_CASE("splitting a series and splicing it back is exact", "[series][splice][property]") {
	std::mt19937 rng(11);
	std::uniform_real_distribution<double> val(0.0, 0.2);
	std::vector<double> xs(120);
	for (auto &x : xs) {
		x = val(rng);
	}
	const auto s = quarterly(1990, 1, xs, ValueKind::Rate);
	for (std::size_t cut = 1; cut < xs.size(); ++cut) {
		const Period boundary = s.observations()[cut].period;
		std::vector<std::pair<DateRange, TimeSeries>> parts{
			{DateRange(s.front().period, boundary.prev()), s},
			{DateRange(boundary, s.back().period), s},
		};
		const auto back = splice(parts);
		REQUIRE(std::equal(back.observations().begin(), back.observations().end(), s.observations().begin(),
		                   s.observations().end()));
	}
}

TEST_CASE("align inner-joins and drops non-positive pairs", "[series][align]") {
	const auto u = monthly(2020, 1, {0.05, 0.06, 0.07, 0.08});
	const auto v = TimeSeries(Frequency::Monthly, ValueKind::Rate, "v",
	                          {{Period::monthly(2020, 2), 0.04}, {Period::monthly(2020, 3), 0.0},
	                           {Period::monthly(2020, 4), 0.03}, {Period::monthly(2020, 5), 0.02}});
	const auto r = align(u, v);
	REQUIRE(r.pairs.size() == 2);
	CHECK(r.dropped_nonpositive == 1);
	CHECK(r.pairs[0] == PairedObservation{Period::monthly(2020, 2), 0.06, 0.04});
	CHECK(r.pairs[1] == PairedObservation{Period::monthly(2020, 4), 0.08, 0.03});

	CHECK(kind_of([&] { align(u, monthly(2021, 1, {0.1})); }) == ErrorKind::NoOverlap);
	CHECK(kind_of([&] { align(u, quarterly(2020, 1, {0.1}, ValueKind::Rate)); }) == ErrorKind::FrequencyMismatch);
}

TEST_CASE("summary reports mean and earliest extrema", "[series][summary]") {
	SECTION("1, 2, 3") {
		const auto s = quarterly(2000, 1, {1.0, 2.0, 3.0});
		const auto st = summary(s);
		CHECK(st.mean == 2.0);
		CHECK(st.min.value == 1.0);
		CHECK(st.min.period == Period::quarterly(2000, 1));
		CHECK(st.max.value == 3.0);
		CHECK(st.max.period == Period::quarterly(2000, 3));
		CHECK(st.count == 3);
	}
	SECTION("constant series, ties go to the earliest period") {
		const auto st = summary(quarterly(2000, 1, {0.7, 0.7, 0.7, 0.7}));
		CHECK(st.mean == 0.7);
		CHECK(st.min.value == 0.7);
		CHECK(st.max.value == 0.7);
		CHECK(st.min.period == Period::quarterly(2000, 1));
		CHECK(st.max.period == Period::quarterly(2000, 1));
	}
	SECTION("windowed and empty window") {
		const auto s = quarterly(2000, 1, {5.0, 1.0, 2.0, 9.0});
		const auto st = summary(s, DateRange(Period::quarterly(2000, 2), Period::quarterly(2000, 3)));
		CHECK(st.mean == 1.5);
		CHECK(st.count == 2);
		CHECK(kind_of([&] { summary(s, DateRange(Period::quarterly(2010, 1), Period::quarterly(2010, 4))); }) ==
		      ErrorKind::EmptyWindow);
	}
}

TEST_CASE("summary over a union of disjoint ranges", "[series][summary][property]") {
	std::mt19937 rng(3);
	std::uniform_real_distribution<double> val(-5.0, 5.0);
	for (int rep = 0; rep < 100; ++rep) {
		std::vector<double> xs(50);
		for (auto &x : xs) {
			x = val(rng);
		}
		const auto s = quarterly(1980, 1, xs);
		const std::int64_t cut = 1 + rep % 48;
		const DateRange left(s.front().period, s.front().period.offset(cut - 1));
		const DateRange right(s.front().period.offset(cut), s.back().period);
		const auto a = summary(s, left);
		const auto b = summary(s, right);
		const auto all = summary(s);
		CHECK(all.mean >= std::min(a.mean, b.mean) - 1e-12);
		CHECK(all.mean <= std::max(a.mean, b.mean) + 1e-12);
		CHECK(all.min.value == std::min(a.min.value, b.min.value));
		CHECK(all.max.value == std::max(a.max.value, b.max.value));
		CHECK(all.mean * 50 == Approx(a.mean * a.count + b.mean * b.count).margin(1e-9));
	}
}
