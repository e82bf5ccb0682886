#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "fibren/errors.hpp"
#include "fibren/rounding.hpp"

namespace fibren {

// Closed real interval with representable (finite double) endpoints: std(R).
// Every arithmetic kernel runs under an active RoundingScope (FE_UPWARD) and
// produces the upper bound of the result and of the negated result, so the
// output contains the exact image set. Endpoints that stop being finite throw
// OverflowError, never yield an invalid interval.
struct Interval {
    double lo;
    double hi;

    Interval() : lo(0.0), hi(0.0) {}
    explicit Interval(double v) : lo(v), hi(v) {
        if (!std::isfinite(v)) throw OverflowError();
    }
    Interval(double l, double h) : lo(l), hi(h) {
        if (!(l <= h) || !std::isfinite(l) || !std::isfinite(h)) throw OverflowError("bad interval endpoints");
    }

    static Interval unchecked(double l, double h) {
        Interval r;
        r.lo = l;
        r.hi = h;
        return r;
    }

    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool is_point() const { return lo == hi; }
};

namespace iv {

inline void check(double l, double h) {
    if (!(l <= h) || !std::isfinite(l) || !std::isfinite(h)) throw OverflowError();
}

inline Interval make(double l, double h) {
    check(l, h);
    return Interval::unchecked(l, h);
}

inline Interval neg(const Interval& a) { return Interval::unchecked(-a.hi, -a.lo); }

inline Interval abs(const Interval& a) {
    const double l = std::max({0.0, a.lo, -a.hi});
    const double r = -std::min({0.0, a.lo, -a.hi});
    return Interval::unchecked(l, r);
}

inline Interval add(const Interval& a, const Interval& b) {
    FIBREN_ASSERT_ROUNDING();
    const double h = a.hi + b.hi;
    const double nl = (-a.lo) + (-b.lo);
    check(-nl, h);
    return Interval::unchecked(-nl, h);
}

inline Interval sub(const Interval& a, const Interval& b) { return add(a, neg(b)); }

inline Interval mul(const Interval& a, const Interval& b) {
    FIBREN_ASSERT_ROUNDING();
    const double h = std::max(std::max(a.lo * b.lo, a.lo * b.hi), std::max(a.hi * b.lo, a.hi * b.hi));
    const double nl =
        std::max(std::max((-a.lo) * b.lo, (-a.lo) * b.hi), std::max((-a.hi) * b.lo, (-a.hi) * b.hi));
    check(-nl, h);
    return Interval::unchecked(-nl, h);
}

inline Interval inv(const Interval& a) {
    FIBREN_ASSERT_ROUNDING();
    if (!(a.lo * a.hi > 0.0)) throw DivisorStraddlesZero();
    const double h = 1.0 / a.lo;
    const double nl = (-1.0) / a.hi;
    check(-nl, h);
    return Interval::unchecked(-nl, h);
}

inline Interval div(const Interval& a, const Interval& b) { return mul(a, inv(b)); }

// Set operations. Endpoints are already representable, so no rounding occurs.
inline Interval hull(const Interval& a, const Interval& b) {
    return Interval::unchecked(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

inline std::optional<Interval> intersect(const Interval& a, const Interval& b) {
    const double l = std::max(a.lo, b.lo);
    const double h = std::min(a.hi, b.hi);
    if (l > h) return std::nullopt;
    return Interval::unchecked(l, h);
}

inline bool disjoint(const Interval& a, const Interval& b) { return a.hi < b.lo || b.hi < a.lo; }

// Upper bound on the diameter.
inline double width(const Interval& a) {
    FIBREN_ASSERT_ROUNDING();
    return a.hi - a.lo;
}

// A representable point inside the interval (not necessarily the exact center).
inline double midpoint(const Interval& a) {
    double m = a.lo + (a.hi - a.lo) / 2.0;
    if (!(m >= a.lo)) m = a.lo;
    if (!(m <= a.hi)) m = a.hi;
    return m;
}

inline std::pair<Interval, Interval> split(const Interval& a) {
    const double m = midpoint(a);
    return {Interval::unchecked(a.lo, m), Interval::unchecked(m, a.hi)};
}

// sup |a| and inf |a|.
inline double mag(const Interval& a) { return std::max(std::fabs(a.lo), std::fabs(a.hi)); }
inline double mig(const Interval& a) {
    if (a.lo > 0.0) return a.lo;
    if (a.hi < 0.0) return -a.hi;
    return 0.0;
}

inline bool certainly_lt(const Interval& a, const Interval& b) { return a.hi < b.lo; }
inline bool certainly_gt(const Interval& a, const Interval& b) { return a.lo > b.hi; }
inline bool certainly_positive(const Interval& a) { return a.lo > 0.0; }
inline bool certainly_negative(const Interval& a) { return a.hi < 0.0; }

} // namespace iv

inline Interval operator-(const Interval& a) { return iv::neg(a); }
inline Interval operator+(const Interval& a, const Interval& b) { return iv::add(a, b); }
inline Interval operator-(const Interval& a, const Interval& b) { return iv::sub(a, b); }
inline Interval operator*(const Interval& a, const Interval& b) { return iv::mul(a, b); }
inline Interval operator/(const Interval& a, const Interval& b) { return iv::div(a, b); }

inline Interval operator+(const Interval& a, double b) { return iv::add(a, Interval(b)); }
inline Interval operator+(double a, const Interval& b) { return iv::add(Interval(a), b); }
inline Interval operator-(const Interval& a, double b) { return iv::sub(a, Interval(b)); }
inline Interval operator-(double a, const Interval& b) { return iv::sub(Interval(a), b); }
inline Interval operator*(const Interval& a, double b) { return iv::mul(a, Interval(b)); }
inline Interval operator*(double a, const Interval& b) { return iv::mul(Interval(a), b); }
inline Interval operator/(const Interval& a, double b) { return iv::div(a, Interval(b)); }
inline Interval operator/(double a, const Interval& b) { return iv::div(Interval(a), b); }

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }

} // namespace fibren
