#pragma once

#include <cmath>

#include "fibren/affine.hpp"
#include "fibren/degree.hpp"
#include "fibren/dpoly.hpp"
#include "fibren/enclosure.hpp"
#include "fibren/interval.hpp"
#include "fibren/newton.hpp"
#include "fibren/rpow.hpp"

namespace fibren {

// The renormalization calculus is written once over a numeric kit. RigorKit
// computes certified enclosures; FastKit is the plain-double twin used by the
// approximate fixed-point finder and by finite-difference audits.
struct RigorKit {
    static constexpr bool rigorous = true;
    using Num = Interval;
    using Fn = FuncEnclosure;

    static Num num(double v) { return Interval(v); }
    static double approx(const Num& x) { return iv::midpoint(x); }
    static double upper(const Num& x) { return iv::mag(x); }
    static Num abs(const Num& x) { return iv::abs(x); }
    static Num pow(const Num& x, const Rat& r) { return pow_rat(x, r); }
    static bool lt(const Num& a, const Num& b) { return iv::certainly_lt(a, b); }
    static Num ipow_signed(const Num& x, std::size_t k) {
        if (k == 0) return Interval(1.0);
        const Interval m = int_pow(iv::abs(x), static_cast<std::int64_t>(k));
        if (!(k & 1)) return m;
        if (x.lo >= 0.0) return m;
        if (x.hi <= 0.0) return -m;
        return iv::hull(-m, m);
    }

    static Num eval(const Fn& f, const Num& x) { return enc::eval(f, x); }
    static double eval_mid(const Fn& f, double x) { return enc::eval_mid(f, x); }
    static Fn compose(const Fn& f, const Fn& g) { return enc::compose(f, g); }
    static Fn affine_pre(const Fn& f, const Num& lam, const Num& c) { return enc::affine_pre(f, lam, c); }
    static Fn affine_post(const Num& a, const Num& b, const Fn& f) { return enc::affine_post(a, b, f); }
    static Fn derivative(const Fn& f) { return enc::derivative(f); }
    static Fn mul(const Fn& f, const Fn& g) { return enc::mul(f, g); }
    static Fn add(const Fn& f, const Fn& g) { return enc::add(f, g); }
    static Fn sub(const Fn& f, const Fn& g) { return enc::sub(f, g); }
    static Fn scale(const Fn& f, const Num& a) { return enc::scale(f, a); }
    static Fn constant(std::size_t n, const Num& c) { return Fn::constant(n, c); }
    static Fn identity(std::size_t n) { return Fn::identity(n); }
    static Fn affine_fn(std::size_t n, const Num& slope, const Num& icept) {
        Fn f(n);
        f.coeff(0) = icept;
        f.coeff(1) = slope;
        return f;
    }
    static Fn add_const(const Fn& f, const Num& c) { return enc::add_const(f, c); }
    static double norm(const Fn& f) { return enc::norm_l1(f); }
    static Num rat(const Rat& r) { return rat_as_interval(r); }
    static bool is_zero(const Fn& f) {
        if (f.has_tails()) return false;
        for (std::size_t k = 0; k < f.size(); ++k)
            if (f.coeff(k).lo != 0.0 || f.coeff(k).hi != 0.0) return false;
        return true;
    }

    template <class V, class D>
    static Num solve(V&& value, D&& deriv, const Num& target, double guess) {
        auto fval = [&](double x) { return iv::midpoint(value(Interval(x))); };
        auto fder = [&](double x) { return iv::midpoint(deriv(Interval(x))); };
        return solve_certified(value, deriv, fval, fder, target, guess);
    }
};

struct FastKit {
    static constexpr bool rigorous = false;
    using Num = double;
    using Fn = DPoly;

    static Num num(double v) { return v; }
    static double approx(Num x) { return x; }
    static double upper(Num x) { return std::fabs(x); }
    static Num abs(Num x) { return std::fabs(x); }
    static Num pow(Num x, const Rat& r) { return std::pow(x, r.approx()); }
    static bool lt(Num a, Num b) { return a < b; }
    static Num ipow_signed(Num x, std::size_t k) { return std::pow(x, static_cast<double>(k)); }

    static Num eval(const Fn& f, Num x) { return dp::eval(f, x); }
    static double eval_mid(const Fn& f, double x) { return dp::eval(f, x); }
    static Fn compose(const Fn& f, const Fn& g) { return dp::compose(f, g); }
    static Fn affine_pre(const Fn& f, Num lam, Num c) { return dp::affine_pre(f, lam, c); }
    static Fn affine_post(Num a, Num b, const Fn& f) { return dp::affine_post(a, b, f); }
    static Fn derivative(const Fn& f) { return dp::derivative(f); }
    static Fn mul(const Fn& f, const Fn& g) { return dp::mul(f, g); }
    static Fn add(const Fn& f, const Fn& g) { return dp::add(f, g); }
    static Fn sub(const Fn& f, const Fn& g) { return dp::sub(f, g); }
    static Fn scale(const Fn& f, Num a) { return dp::scale(f, a); }
    static Fn constant(std::size_t n, Num c) { return Fn::constant(n, c); }
    static Fn identity(std::size_t n) { return Fn::identity(n); }
    static Fn affine_fn(std::size_t n, Num slope, Num icept) {
        Fn f(n);
        f.c[0] = icept;
        f.c[1] = slope;
        return f;
    }
    static Fn add_const(const Fn& f, Num c) { return dp::add_const(f, c); }
    static double norm(const Fn& f) { return dp::norm_l1(f); }
    static Num rat(const Rat& r) { return r.approx(); }
    static bool is_zero(const Fn& f) {
        for (double v : f.c)
            if (v != 0.0) return false;
        return true;
    }

    template <class V, class D>
    static Num solve(V&& value, D&& deriv, Num target, double guess) {
        double x = guess;
        for (int it = 0; it < 80; ++it) {
            const double d = deriv(x);
            if (d == 0.0 || !std::isfinite(d)) throw DerivativeVanishes("flat newton");
            const double step = (value(x) - target) / d;
            x -= step;
            if (!std::isfinite(x)) throw NoConvergence("newton diverged");
            if (std::fabs(step) <= 4e-17 * (1.0 + std::fabs(x))) return x;
        }
        return x;
    }
};

} // namespace fibren
