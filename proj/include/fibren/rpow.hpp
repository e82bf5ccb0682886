#pragma once

#include <cmath>
#include <cstdint>

#include "fibren/degree.hpp"
#include "fibren/interval.hpp"

namespace fibren {

// x^n for integer n >= 0 by binary powering over intervals; input must be
// nonnegative (all callers raise through |x| first).
inline Interval int_pow(const Interval& x, std::int64_t n) {
    if (x.lo < 0.0) throw NegativeBase();
    if (n == 0) return Interval(1.0);
    Interval acc(1.0);
    Interval base = x;
    std::int64_t e = n;
    while (true) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e == 0) break;
        base = base * base;
    }
    return acc;
}

namespace detail {

// Certified n-th root of a point value c >= 0: interval Newton around a double
// predictor, contraction checked on a ball. No libm value is trusted; std::pow
// only seeds the predictor.
inline Interval nth_root_point(double c, std::int64_t n) {
    FIBREN_ASSERT_ROUNDING();
    if (c == 0.0) return Interval(0.0);
    if (c < 0.0) throw NegativeBase();
    if (n == 1) return Interval(c);

    double y = std::pow(c, 1.0 / static_cast<double>(n));
    if (!std::isfinite(y) || y <= 0.0) throw NoConvergence("nth_root predictor failed");
    const double dn = static_cast<double>(n);
    double step = y;
    for (int it = 0; it < 4 && std::fabs(step) > 1e-18 * y; ++it) {
        const double yn1 = std::pow(y, dn - 1.0);
        step = (y * yn1 - c) / (dn * yn1);
        y -= step;
    }

    double delta = 64.0 * (std::fabs(step) + 4.0 * std::numeric_limits<double>::epsilon() * y) +
                   std::numeric_limits<double>::denorm_min();
    for (int attempt = 0; attempt < 8; ++attempt) {
        if (delta >= y) break;
        const Interval ball = iv::make(y - delta, y + delta);
        const Interval f0 = iv::make(dn, dn) * int_pow(Interval(y), n - 1);
        if (!(f0.lo > 0.0)) break;
        const Interval contraction = Interval(1.0) - (dn * int_pow(ball, n - 1)) / f0;
        const double D = iv::mag(contraction);
        const Interval residual = (int_pow(Interval(y), n) - Interval(c)) / f0;
        const double eps = iv::mag(residual);
        if (D < 1.0 && eps < (1.0 - D) * delta) {
            const double r = eps / (1.0 - D);
            return iv::make(std::max(0.0, y - r), y + r);
        }
        delta *= 8.0;
    }
    throw NoCertificate("nth_root certificate failed");
}

} // namespace detail

// Monotone enclosure of {x^(1/n) : x in a}, a.lo >= 0.
inline Interval nth_root(const Interval& a, std::int64_t n) {
    if (a.lo < 0.0) throw NegativeBase();
    if (n == 1) return a;
    const double lo = detail::nth_root_point(a.lo, n).lo;
    const double hi = detail::nth_root_point(a.hi, n).hi;
    return iv::make(std::max(0.0, lo), hi);
}

// Enclosure of {x^r : x in a} for rational r = p/q >= 0, a.lo >= 0. Monotone in
// a by construction (endpointwise evaluation of a monotone function).
inline Interval pow_rat(const Interval& a, const Rat& r) {
    if (a.lo < 0.0) throw NegativeBase();
    if (r.num == 0) return Interval(1.0);
    auto endpoint = [&](double c) {
        return nth_root(int_pow(Interval(c), r.num), r.den);
    };
    const double lo = endpoint(a.lo).lo;
    const double hi = endpoint(a.hi).hi;
    return iv::make(std::max(0.0, lo), hi);
}

// Spec-facing names: x^d and x^(1/d) for a critical degree d.
inline Interval pow_real(const Interval& a, const Degree& d) { return pow_rat(a, d.d()); }
inline Interval root_real(const Interval& a, const Degree& d) { return pow_rat(a, d.inv_d()); }

} // namespace fibren
