#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "effbounds/interval.hpp"
#include "effbounds/precision.hpp"

using namespace effbounds;

TEST_CASE("exact construction and basic arithmetic") {
    Interval two(2);
    CHECK(two.is_point());
    Interval q = Interval::from_rat(mpq_class(3, 2));
    CHECK((q * two).surely_ge(Interval(3)));
    CHECK((q * two).surely_le(Interval(3)));

    // 1/3 is not exactly representable: enclosure, not a point
    Interval third = Interval(1) / Interval(3);
    CHECK(!third.is_point());
    CHECK(third.surely_lt(Interval(1)));
    CHECK(third.surely_gt(Interval()));
}

TEST_CASE("log and exp are soundly rounded") {
    Interval l2 = Interval(2).log();
    // ln 2 = 0.69314718055994530941...
    CHECK(l2.surely_gt(Interval::from_decimal("0.693147180559945309")));
    CHECK(l2.surely_lt(Interval::from_decimal("0.693147180559945310")));
    Interval back = l2.exp();
    CHECK(back.surely_gt(Interval::from_decimal("1.999999999999999")));
    CHECK(back.surely_lt(Interval::from_decimal("2.000000000000001")));
}

TEST_CASE("interval width shrinks and upper bounds decrease with precision") {
    Interval coarse, fine;
    {
        PrecisionGuard g(64);
        coarse = (Interval(3).log() * Interval(7).sqrt()).exp();
    }
    {
        PrecisionGuard g(256);
        fine = (Interval(3).log() * Interval(7).sqrt()).exp();
    }
    CHECK(fine.rel_width() < coarse.rel_width());
    // doubling precision never increases the upper bound
    CHECK(mpfr_lessequal_p(fine.hi(), coarse.hi()));
    CHECK(mpfr_greaterequal_p(fine.lo(), coarse.lo()));
}

TEST_CASE("log_star clamps at 1") {
    CHECK(Interval(1).log_star().surely_ge(Interval(1)));
    CHECK(Interval(1).log_star().surely_le(Interval(1)));
    CHECK(Interval(2).log_star().surely_le(Interval(1)));   // log 2 < 1 -> 1
    CHECK(Interval(10).log_star().surely_gt(Interval(2)));  // log 10 > 2
    // nonpositive argument clamps exactly (log* of log 1 = log* 0)
    Interval z;
    CHECK(z.log_star().surely_ge(Interval(1)));
    CHECK(z.log_star().surely_le(Interval(1)));
}

TEST_CASE("multiplication handles signs") {
    Interval a = Interval(-3);
    Interval b = Interval(2);
    Interval c = a * b;
    CHECK(c.surely_le(Interval(-6)));
    CHECK(c.surely_ge(Interval(-6)));
    Interval d = (-a) * b;
    CHECK(d.surely_ge(Interval(6)));
}

TEST_CASE("division by interval containing zero throws") {
    Interval z;
    CHECK_THROWS(Interval(1) / z);
}

TEST_CASE("euler enclosure") {
    Interval e = Interval::euler();
    CHECK(e.surely_gt(Interval::from_decimal("2.71828182845904523")));
    CHECK(e.surely_lt(Interval::from_decimal("2.71828182845904524")));
}

TEST_CASE("deterministic decimal rendering") {
    Interval x = Interval(2).log();
    CHECK(x.dec_hi(20) == Interval(2).log().dec_hi(20));
    CHECK(x.dec_lo(20) != x.dec_hi(20));  // genuine enclosure
}

TEST_CASE("huge magnitudes stay finite") {
    Interval big = Interval(16).pow_ui(1000) * Interval(10).pow_ui(500);
    CHECK(big.is_positive());
    Interval lg = big.log();
    // log = 1000 log 16 + 500 log 10 ~ 3923.9
    CHECK(lg.surely_gt(Interval(3923)));
    CHECK(lg.surely_lt(Interval(3925)));
}
