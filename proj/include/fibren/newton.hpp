#pragma once

#include <cmath>
#include <limits>

#include "fibren/interval.hpp"

namespace fibren {

// Certified solution of f(x) = a near x0 via the Newton map
// N(x) = x - (f(x) - a)/f'(x0) and the contraction mapping principle:
// with D = sup_{B_delta(x0)} |1 - f'(x)/f'(x0)| < 1 and
// eps = |N(x0) - x0| < (1-D)*delta, the solution set lies in
// [x0 - eps/(1-D), x0 + eps/(1-D)].
//
// `value` and `deriv` are interval evaluators of f and f'.
template <class Value, class Deriv>
Interval newton_solve(Value&& value, Deriv&& deriv, const Interval& a, double x0, double delta) {
    FIBREN_ASSERT_ROUNDING();
    if (!(delta > 0.0)) throw NoCertificate("nonpositive ball radius");
    const Interval f0 = deriv(Interval(x0));
    if (f0.contains(0.0)) throw DerivativeVanishes();
    const Interval ball = iv::make(x0 - delta, x0 + delta);
    const Interval contraction = Interval(1.0) - deriv(ball) / f0;
    const double D = iv::mag(contraction);
    const Interval step = (value(Interval(x0)) - a) / f0;
    const double eps = iv::mag(step);
    if (!(D < 1.0) || !(eps < (1.0 - D) * delta)) throw NoCertificate();
    const double r = eps / (1.0 - D);
    return iv::make(x0 - r, x0 + r);
}

// Adaptive front end: runs a plain double Newton as predictor, then tries
// certification balls scaled from the predictor's last correction (the spec's
// 64x residual rule), growing on failure.
template <class Value, class Deriv, class ApproxValue, class ApproxDeriv>
Interval solve_certified(Value&& value, Deriv&& deriv, ApproxValue&& fval, ApproxDeriv&& fder,
                         const Interval& a, double guess) {
    const double am = iv::midpoint(a);
    double x = guess;
    double step = 0.0;
    for (int it = 0; it < 60; ++it) {
        const double d = fder(x);
        if (d == 0.0 || !std::isfinite(d)) throw DerivativeVanishes("flat predictor");
        step = (fval(x) - am) / d;
        x -= step;
        if (!std::isfinite(x)) throw NoConvergence("newton predictor diverged");
        if (std::fabs(step) <= 1e-17 * (1.0 + std::fabs(x))) break;
    }
    double delta = 64.0 * (std::fabs(step) + iv::width(a) +
                           4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(x)));
    for (int attempt = 0; attempt < 10; ++attempt) {
        try {
            return newton_solve(value, deriv, a, x, delta);
        } catch (const NoCertificate&) {
            delta *= 8.0;
        }
    }
    throw NoCertificate("certificate failed at all ball radii");
}

} // namespace fibren
