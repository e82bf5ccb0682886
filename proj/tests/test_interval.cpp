#include <catch2/catch_amalgamated.hpp>

#include <cfloat>
#include <cmath>
#include <random>

#include "fibren/degree.hpp"
#include "fibren/hexio.hpp"
#include "fibren/interval.hpp"
#include "fibren/rpow.hpp"

using namespace fibren;

namespace {

std::mt19937_64 rng(0x5eedf00dULL);

double rand_double(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
}

Interval rand_interval(double lo, double hi) {
    double a = rand_double(lo, hi), b = rand_double(lo, hi);
    if (a > b) std::swap(a, b);
    return Interval(a, b);
}

double rand_inside(const Interval& a) {
    return a.lo + (a.hi - a.lo) * rand_double(0.0, 1.0);
}

} // namespace

TEST_CASE("neg and abs follow the displayed formulas exactly") {
    CHECK(iv::neg(Interval(1, 2)).lo == -2.0);
    CHECK(iv::neg(Interval(1, 2)).hi == -1.0);
    CHECK(iv::neg(Interval(0.0)).lo == 0.0);
    CHECK(iv::neg(Interval(-3, 5)).lo == -5.0);
    CHECK(iv::neg(Interval(-3, 5)).hi == 3.0);

    CHECK(iv::abs(Interval(-3, 2)).lo == 0.0);
    CHECK(iv::abs(Interval(-3, 2)).hi == 3.0);
    CHECK(iv::abs(Interval(1, 4)).lo == 1.0);
    CHECK(iv::abs(Interval(1, 4)).hi == 4.0);
    CHECK(iv::abs(Interval(-4, -1)).lo == 1.0);
    CHECK(iv::abs(Interval(-4, -1)).hi == 4.0);

    for (int n = 0; n < 1000; ++n) {
        const Interval a = rand_interval(-10, 10);
        const Interval nn = iv::neg(iv::neg(a));
        CHECK(nn.lo == a.lo);
        CHECK(nn.hi == a.hi);
        const Interval ab = iv::abs(a);
        CHECK(iv::abs(ab).lo == ab.lo);
        CHECK(iv::abs(ab).hi == ab.hi);
    }
}

TEST_CASE("small integer arithmetic is exact") {
    RoundingScope rs;
    const Interval s = Interval(1, 2) + Interval(3, 4);
    CHECK(s.lo == 4.0);
    CHECK(s.hi == 6.0);
    const Interval p = Interval(-1, 2) * Interval(3, 4);
    CHECK(p.lo == -4.0);
    CHECK(p.hi == 8.0);
    const Interval r = iv::inv(Interval(2, 4));
    CHECK(r.lo == 0.25);
    CHECK(r.hi == 0.5);
}

TEST_CASE("division by an interval meeting zero raises") {
    RoundingScope rs;
    CHECK_THROWS_AS(iv::inv(Interval(-1, 1)), DivisorStraddlesZero);
    CHECK_THROWS_AS(iv::inv(Interval(0, 2)), DivisorStraddlesZero);
    CHECK_THROWS_AS(Interval(1.0) / Interval(-2, 0), DivisorStraddlesZero);
}

TEST_CASE("overflow aborts instead of producing an invalid interval") {
    RoundingScope rs;
    CHECK_THROWS_AS(Interval(DBL_MAX) * Interval(2.0), OverflowError);
    CHECK_THROWS_AS(Interval(DBL_MAX) + Interval(DBL_MAX), OverflowError);
}

// Acceptance-style soundness sweep: for every operation, the exact result of
// sampled points (computed in extended precision) lies in the interval result,
// and widening the operands never shrinks the output.
TEST_CASE("containment and monotonicity, 1e5 samples per operation") {
    const int samples = 100000;
    int violations = 0;
    for (int n = 0; n < samples; ++n) {
        const Interval a = rand_interval(-8, 8);
        const Interval b = rand_interval(-8, 8);
        Interval bpos = rand_interval(0.125, 8);
        const double xa = rand_inside(a), xb = rand_inside(b), xp = rand_inside(bpos);

        Interval sum, dif, prd, quo;
        {
            RoundingScope rs;
            sum = a + b;
            dif = a - b;
            prd = a * b;
            quo = a / bpos;
        }
        const long double la = xa, lb = xb, lp = xp;
        if (!(sum.lo <= la + lb && la + lb <= sum.hi)) ++violations;
        if (!(la - lb <= dif.hi && dif.lo <= la - lb)) ++violations;
        if (!(la * lb <= prd.hi && prd.lo <= la * lb)) ++violations;
        if (!(la / lp <= quo.hi && quo.lo <= la / lp)) ++violations;

        // monotonicity: enlarge operands
        Interval a2 = Interval(a.lo - 0.25, a.hi + 0.5);
        Interval b2 = Interval(b.lo - 0.125, b.hi + 0.25);
        Interval bpos2 = Interval(bpos.lo * 0.5, bpos.hi * 2.0);
        Interval sum2, prd2, quo2;
        {
            RoundingScope rs;
            sum2 = a2 + b2;
            prd2 = a2 * b2;
            quo2 = a2 / bpos2;
        }
        if (!sum2.contains(sum)) ++violations;
        if (!prd2.contains(prd)) ++violations;
        if (!quo2.contains(quo)) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("rational powers: spec examples") {
    RoundingScope rs;
    const Degree d38 = Degree::parse("3.8");
    const Degree d51 = Degree::parse("5.1");

    const Interval one = pow_real(Interval(1.0), d38);
    CHECK(one.contains(1.0));
    CHECK(iv::width(one) <= 2 * DBL_EPSILON);

    const Interval zero = pow_real(Interval(0.0), d51);
    CHECK(zero.lo == 0.0);
    CHECK(zero.hi == 0.0);

    const Interval four = pow_real(Interval(2.0), Degree(2, 1, "2"));
    CHECK(four.contains(4.0));
    CHECK(iv::width(four) <= 4 * (4.0 * DBL_EPSILON));

    CHECK(root_real(Interval(1.0), d38).contains(1.0));
    CHECK(root_real(Interval(16.0), Degree(2, 1, "2")).contains(4.0));

    CHECK_THROWS_AS(pow_real(Interval(-1, 1), d38), NegativeBase);
}

TEST_CASE("rational powers: round trip and integer-power agreement") {
    RoundingScope rs;
    const Degree d38 = Degree::parse("3.8");
    for (int n = 0; n < 2000; ++n) {
        const double x = rand_double(0.1, 0.9);
        const Interval y = pow_real(Interval(x), d38);
        const Interval back = root_real(y, d38);
        CHECK(back.contains(x));
    }
    // integer degree agrees with repeated multiplication within 8 ulp slack
    const Degree d3 = Degree(3, 1, "3");
    for (int n = 0; n < 2000; ++n) {
        const Interval a = rand_interval(0.0, 2.0);
        const Interval p = pow_real(a, d3);
        const Interval q = a * a * a;
        const double slack = 8 * DBL_EPSILON * (1.0 + iv::mag(q));
        CHECK(p.lo >= q.lo - slack);
        CHECK(p.hi <= q.hi + slack);
        CHECK(q.lo >= p.lo - slack);
        CHECK(q.hi <= p.hi + slack);
    }
    // monotonicity in the argument
    for (int n = 0; n < 2000; ++n) {
        const Interval a = rand_interval(0.0, 2.0);
        const Interval wider = Interval(a.lo * 0.5, a.hi + 0.25);
        CHECK(pow_real(wider, d38).contains(pow_real(a, d38)));
    }
}

TEST_CASE("pow containment against extended-precision sampling") {
    const Degree d38 = Degree::parse("3.8");
    const Degree d51 = Degree::parse("5.1");
    int violations = 0;
    for (int n = 0; n < 100000; ++n) {
        const Interval a = rand_interval(0.0, 1.5);
        const double x = rand_inside(a);
        const Degree& d = (n & 1) ? d38 : d51;
        Interval p;
        {
            RoundingScope rs;
            p = pow_real(a, d);
        }
        const long double exact = powl(static_cast<long double>(x),
                                       static_cast<long double>(d.num()) / static_cast<long double>(d.den()));
        const long double pad = 4e-18L * (1.0L + exact);
        if (!(static_cast<long double>(p.lo) <= exact + pad && exact - pad <= static_cast<long double>(p.hi)))
            ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("set operations and splitting") {
    RoundingScope rs;
    const Interval h = iv::hull(Interval(-1, 0.5), Interval(0, 2));
    CHECK(h.lo == -1.0);
    CHECK(h.hi == 2.0);
    auto isect = iv::intersect(Interval(-1, 0.5), Interval(0, 2));
    REQUIRE(isect.has_value());
    CHECK(isect->lo == 0.0);
    CHECK(isect->hi == 0.5);
    CHECK(!iv::intersect(Interval(-1, -0.5), Interval(0, 2)).has_value());

    const auto [l, r] = iv::split(Interval(0, 1));
    CHECK(l.hi == r.lo);
    CHECK(l.lo == 0.0);
    CHECK(r.hi == 1.0);
    CHECK(iv::width(Interval(0, 1)) == 1.0);
}

TEST_CASE("hex serialization round trips bit exactly") {
    std::uniform_real_distribution<double> d(-1e3, 1e3);
    for (int n = 0; n < 1000; ++n) {
        const double x = d(rng);
        CHECK(hex_to_double(hex_of(x)) == x);
    }
    CHECK(hex_to_double(hex_of(0.1)) == 0.1);
    CHECK(hex_to_double(hex_of(-0.0)) == 0.0);
}

TEST_CASE("degree parsing is exact rational") {
    const Degree d = Degree::parse("3.8");
    CHECK(d.num() == 19);
    CHECK(d.den() == 5);
    const Degree h = Degree::parse("5.1");
    CHECK(h.num() == 51);
    CHECK(h.den() == 10);
    CHECK(Degree::parse("19/5") == d);
    RoundingScope rs;
    CHECK(d.as_interval().contains(3.8));
    CHECK(d.as_interval().lo <= 3.8);
}
