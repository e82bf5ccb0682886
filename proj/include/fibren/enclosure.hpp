#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fibren/interval.hpp"

namespace fibren {

// Rigorous enclosure of an analytic function on [-1,1]: per-order coefficient
// intervals plus per-order tail radii. The represented set is
//   { sum a_k x^k + sum g_k(x) : a_k in coeff_k,  g_k = O(x^k) analytic,
//     l1-norm of g_k's coefficients <= tail_k },
// where the l1 norm is the coefficient sum; it dominates the sup norm on
// [-1,1]. Tail members are additionally assumed to satisfy the Markov-type
// bound ||g_k'||_1 <= degree() * tail_k; only raw psi/phi enclosures (fixed
// point data, ball inflations, file loads) are ever differentiated, so
// composition outputs never rely on that convention.
class FuncEnclosure {
  public:
    FuncEnclosure() = default;
    explicit FuncEnclosure(std::size_t degree) : coeff_(degree + 1), tail_(degree + 1, 0.0) {}

    static FuncEnclosure constant(std::size_t degree, const Interval& c) {
        FuncEnclosure f(degree);
        f.coeff_[0] = c;
        return f;
    }
    static FuncEnclosure identity(std::size_t degree) {
        FuncEnclosure f(degree);
        if (degree < 1) throw Error("identity needs degree >= 1");
        f.coeff_[1] = Interval(1.0);
        return f;
    }
    static FuncEnclosure monomial(std::size_t degree, std::size_t k) {
        FuncEnclosure f(degree);
        if (k > degree) throw Error("monomial order exceeds degree");
        f.coeff_[k] = Interval(1.0);
        return f;
    }
    // Pure tail slot: any analytic g = O(x^k) with ||g||_1 <= r.
    static FuncEnclosure tail_unit(std::size_t degree, std::size_t k, double r) {
        FuncEnclosure f(degree);
        f.tail_[k > degree ? degree : k] = r;
        return f;
    }

    std::size_t degree() const { return coeff_.size() - 1; }
    std::size_t size() const { return coeff_.size(); }

    const Interval& coeff(std::size_t k) const { return coeff_[k]; }
    Interval& coeff(std::size_t k) { return coeff_[k]; }
    double tail(std::size_t k) const { return tail_[k]; }
    void add_tail(std::size_t k, double r) {
        FIBREN_ASSERT_ROUNDING();
        tail_[k] += r; // round-up regime: sound accumulation
        if (!std::isfinite(tail_[k])) throw OverflowError("tail radius overflow");
    }
    bool has_tails() const {
        for (double t : tail_)
            if (t != 0.0) return true;
        return false;
    }

  private:
    std::vector<Interval> coeff_;
    std::vector<double> tail_;
};

namespace enc {

// Upper bound for the l1 norm of every member.
inline double norm_l1(const FuncEnclosure& f) {
    FIBREN_ASSERT_ROUNDING();
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += iv::mag(f.coeff(k)) + f.tail(k);
    return s;
}

// Value enclosure at x, x inside [-1,1]. The tail of order k contributes
// tail_k * mag(x)^k (members are O(x^k) with coefficient sum <= tail_k).
inline Interval eval(const FuncEnclosure& f, const Interval& x) {
    FIBREN_ASSERT_ROUNDING();
    if (x.lo < -1.0 || x.hi > 1.0) throw DomainViolation();
    const std::size_t n = f.degree();
    Interval acc = f.coeff(n);
    for (std::size_t k = n; k-- > 0;) acc = acc * x + f.coeff(k);
    if (f.has_tails()) {
        const double m = iv::mag(x);
        double mk = 1.0, lo = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) {
            lo += f.tail(k) * mk;
            mk *= m;
        }
        acc = acc + Interval::unchecked(-lo, lo);
    }
    return acc;
}

inline Interval range(const FuncEnclosure& f) { return eval(f, Interval(-1.0, 1.0)); }

// Midpoint Horner in plain double; predictor only.
inline double eval_mid(const FuncEnclosure& f, double x) {
    double acc = iv::midpoint(f.coeff(f.degree()));
    for (std::size_t k = f.degree(); k-- > 0;) acc = acc * x + iv::midpoint(f.coeff(k));
    return acc;
}

inline FuncEnclosure add(const FuncEnclosure& f, const FuncEnclosure& g) {
    FIBREN_ASSERT_ROUNDING();
    if (f.degree() != g.degree()) throw Error("degree mismatch");
    FuncEnclosure r(f.degree());
    for (std::size_t k = 0; k < f.size(); ++k) {
        r.coeff(k) = f.coeff(k) + g.coeff(k);
        r.add_tail(k, f.tail(k) + g.tail(k));
    }
    return r;
}

inline FuncEnclosure sub(const FuncEnclosure& f, const FuncEnclosure& g) {
    FIBREN_ASSERT_ROUNDING();
    if (f.degree() != g.degree()) throw Error("degree mismatch");
    FuncEnclosure r(f.degree());
    for (std::size_t k = 0; k < f.size(); ++k) {
        r.coeff(k) = f.coeff(k) - g.coeff(k);
        r.add_tail(k, f.tail(k) + g.tail(k));
    }
    return r;
}

inline FuncEnclosure scale(const FuncEnclosure& f, const Interval& a) {
    FIBREN_ASSERT_ROUNDING();
    FuncEnclosure r(f.degree());
    const double ma = iv::mag(a);
    for (std::size_t k = 0; k < f.size(); ++k) {
        r.coeff(k) = f.coeff(k) * a;
        r.add_tail(k, f.tail(k) * ma);
    }
    return r;
}

inline FuncEnclosure add_const(const FuncEnclosure& f, const Interval& a) {
    FuncEnclosure r = f;
    r.coeff(0) = r.coeff(0) + a;
    return r;
}

// Product of enclosures. Coefficient convolution past the truncation degree is
// flushed into the top tail; poly-tail and tail-tail mass lands at the order
// of the product.
inline FuncEnclosure mul(const FuncEnclosure& f, const FuncEnclosure& g) {
    FIBREN_ASSERT_ROUNDING();
    const std::size_t n = std::max(f.degree(), g.degree());
    FuncEnclosure r(n);
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (f.coeff(k).lo == 0.0 && f.coeff(k).hi == 0.0) continue;
        for (std::size_t l = 0; l < g.size(); ++l) {
            if (g.coeff(l).lo == 0.0 && g.coeff(l).hi == 0.0) continue;
            const Interval p = f.coeff(k) * g.coeff(l);
            const std::size_t m = k + l;
            if (m <= n)
                r.coeff(m) = r.coeff(m) + p;
            else
                r.add_tail(n, iv::mag(p));
        }
    }
    const bool ft = f.has_tails(), gt = g.has_tails();
    if (ft || gt) {
        std::vector<double> fm(f.size()), gm(g.size());
        for (std::size_t k = 0; k < f.size(); ++k) fm[k] = iv::mag(f.coeff(k));
        for (std::size_t l = 0; l < g.size(); ++l) gm[l] = iv::mag(g.coeff(l));
        for (std::size_t k = 0; k < f.size(); ++k) {
            for (std::size_t l = 0; l < g.size(); ++l) {
                const double m1 = f.tail(k) * gm[l];
                const double m2 = fm[k] * g.tail(l);
                const double m3 = f.tail(k) * g.tail(l);
                const double mass = m1 + m2 + m3;
                if (mass != 0.0) r.add_tail(std::min(k + l, n), mass);
            }
        }
    }
    return r;
}

// f of g. Requires the certified range of g inside [-1,1]; outer tail slots
// additionally require ||g||_1 <= 1 (they flush as tail_k * ||g||_1^k into the
// absolute slot).
inline FuncEnclosure compose(const FuncEnclosure& f, const FuncEnclosure& g) {
    FIBREN_ASSERT_ROUNDING();
    const Interval rg = range(g);
    if (rg.lo < -1.0 || rg.hi > 1.0) throw RangeViolation();
    const std::size_t n = std::max(f.degree(), g.degree());
    FuncEnclosure acc = FuncEnclosure::constant(n, f.coeff(f.degree()));
    for (std::size_t k = f.degree(); k-- > 0;) {
        acc = mul(acc, g);
        acc.coeff(0) = acc.coeff(0) + f.coeff(k);
    }
    if (f.has_tails()) {
        const double u = norm_l1(g);
        if (u > 1.0) throw RangeViolation("inner l1 norm exceeds 1 under outer tails");
        double uk = 1.0;
        double mass = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) {
            mass += f.tail(k) * uk;
            uk *= u;
        }
        acc.add_tail(0, mass);
    }
    return acc;
}

// f(lam*x + c), exact degree (binomial re-expansion via Horner with an affine
// factor). Outer tails flush to the absolute slot with factor (|c|+|lam|)^k,
// which is <= 1 whenever the affine image stays inside [-1,1].
inline FuncEnclosure affine_pre(const FuncEnclosure& f, const Interval& lam, const Interval& c) {
    FIBREN_ASSERT_ROUNDING();
    const std::size_t n = f.degree();
    std::vector<Interval> acc(n + 1);
    acc[0] = f.coeff(n);
    std::size_t deg = 0;
    for (std::size_t k = n; k-- > 0;) {
        // acc <- acc*(lam x + c) + f_k
        for (std::size_t m = deg + 1; m-- > 1;) acc[m] = acc[m] * c + acc[m - 1] * lam;
        acc[0] = acc[0] * c + f.coeff(k);
        if (deg < n) ++deg;
    }
    FuncEnclosure r(n);
    for (std::size_t m = 0; m <= n; ++m) r.coeff(m) = acc[m];
    if (f.has_tails()) {
        const double u = iv::mag(lam) + iv::mag(c);
        if (u > 1.0) throw RangeViolation("affine image leaves [-1,1] under outer tails");
        double uk = 1.0, mass = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) {
            mass += f.tail(k) * uk;
            uk *= u;
        }
        r.add_tail(0, mass);
    }
    return r;
}

// a + b*f (affine post-composition).
inline FuncEnclosure affine_post(const Interval& a, const Interval& b, const FuncEnclosure& f) {
    FuncEnclosure r = scale(f, b);
    r.coeff(0) = r.coeff(0) + a;
    return r;
}

// Derivative under the tail convention ||g_k'||_1 <= degree * tail_k.
inline FuncEnclosure derivative(const FuncEnclosure& f) {
    FIBREN_ASSERT_ROUNDING();
    const std::size_t n = f.degree();
    FuncEnclosure r(n);
    for (std::size_t k = 1; k <= n; ++k) r.coeff(k - 1) = f.coeff(k) * static_cast<double>(k);
    const double dn = static_cast<double>(n);
    for (std::size_t k = 0; k <= n; ++k)
        if (f.tail(k) != 0.0) r.add_tail(k == 0 ? 0 : k - 1, dn * f.tail(k));
    return r;
}

// Re-truncation: coefficient and tail mass above order m becomes tail_m.
inline FuncEnclosure truncate(const FuncEnclosure& f, std::size_t m) {
    FIBREN_ASSERT_ROUNDING();
    if (m >= f.degree()) return f;
    FuncEnclosure r(m);
    for (std::size_t k = 0; k <= m; ++k) {
        r.coeff(k) = f.coeff(k);
        r.add_tail(k, f.tail(k));
    }
    double mass = 0.0;
    for (std::size_t k = m + 1; k < f.size(); ++k) mass += iv::mag(f.coeff(k)) + f.tail(k);
    r.add_tail(m, mass);
    return r;
}

// Lift to a larger truncation degree (no information change).
inline FuncEnclosure lift(const FuncEnclosure& f, std::size_t degree) {
    if (degree <= f.degree()) return f;
    FuncEnclosure r(degree);
    for (std::size_t k = 0; k < f.size(); ++k) {
        r.coeff(k) = f.coeff(k);
        r.add_tail(k, f.tail(k));
    }
    return r;
}

// Slotwise containment up to tails: every member of f is a member of g.
inline bool contained_in(const FuncEnclosure& f, const FuncEnclosure& g) {
    if (f.degree() != g.degree()) return false;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (!(g.coeff(k).lo <= f.coeff(k).lo && f.coeff(k).hi <= g.coeff(k).hi)) return false;
        if (f.tail(k) > g.tail(k)) return false;
    }
    return true;
}

} // namespace enc
} // namespace fibren
