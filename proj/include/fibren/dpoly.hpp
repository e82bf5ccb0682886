#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "fibren/errors.hpp"

namespace fibren {

// Plain double polynomial on [-1,1]; the non-rigorous twin of FuncEnclosure
// used by the approximate fixed-point finder and the finite-difference audits.
struct DPoly {
    std::vector<double> c;

    DPoly() = default;
    explicit DPoly(std::size_t degree) : c(degree + 1, 0.0) {}

    static DPoly constant(std::size_t degree, double v) {
        DPoly p(degree);
        p.c[0] = v;
        return p;
    }
    static DPoly identity(std::size_t degree) {
        DPoly p(degree);
        p.c[1] = 1.0;
        return p;
    }
    static DPoly monomial(std::size_t degree, std::size_t k) {
        DPoly p(degree);
        p.c[k] = 1.0;
        return p;
    }

    std::size_t degree() const { return c.size() - 1; }
};

namespace dp {

inline double eval(const DPoly& f, double x) {
    double acc = f.c.back();
    for (std::size_t k = f.c.size() - 1; k-- > 0;) acc = acc * x + f.c[k];
    return acc;
}

inline double norm_l1(const DPoly& f) {
    double s = 0.0;
    for (double v : f.c) s += std::fabs(v);
    return s;
}

inline DPoly add(const DPoly& a, const DPoly& b) {
    DPoly r(std::max(a.degree(), b.degree()));
    for (std::size_t k = 0; k < a.c.size(); ++k) r.c[k] += a.c[k];
    for (std::size_t k = 0; k < b.c.size(); ++k) r.c[k] += b.c[k];
    return r;
}

inline DPoly sub(const DPoly& a, const DPoly& b) {
    DPoly r(std::max(a.degree(), b.degree()));
    for (std::size_t k = 0; k < a.c.size(); ++k) r.c[k] += a.c[k];
    for (std::size_t k = 0; k < b.c.size(); ++k) r.c[k] -= b.c[k];
    return r;
}

inline DPoly scale(const DPoly& a, double s) {
    DPoly r = a;
    for (double& v : r.c) v *= s;
    return r;
}

inline DPoly add_const(const DPoly& a, double s) {
    DPoly r = a;
    r.c[0] += s;
    return r;
}

// Truncated product.
inline DPoly mul(const DPoly& a, const DPoly& b) {
    const std::size_t n = std::max(a.degree(), b.degree());
    DPoly r(n);
    for (std::size_t k = 0; k < a.c.size(); ++k) {
        if (a.c[k] == 0.0) continue;
        const std::size_t lmax = std::min(b.c.size(), n + 1 - k);
        for (std::size_t l = 0; l < lmax; ++l) r.c[k + l] += a.c[k] * b.c[l];
    }
    return r;
}

inline DPoly compose(const DPoly& f, const DPoly& g) {
    const std::size_t n = std::max(f.degree(), g.degree());
    DPoly acc = DPoly::constant(n, f.c.back());
    for (std::size_t k = f.c.size() - 1; k-- > 0;) {
        acc = mul(acc, g);
        acc.c[0] += f.c[k];
    }
    return acc;
}

// f(lam*x + c), exact degree.
inline DPoly affine_pre(const DPoly& f, double lam, double c) {
    const std::size_t n = f.degree();
    DPoly acc(n);
    acc.c[0] = f.c[n];
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t m = n; m-- > 0;) acc.c[m + 1] = acc.c[m + 1] * c + acc.c[m] * lam;
        acc.c[0] = acc.c[0] * c + f.c[k];
    }
    return acc;
}

inline DPoly affine_post(double a, double b, const DPoly& f) {
    DPoly r = scale(f, b);
    r.c[0] += a;
    return r;
}

inline DPoly derivative(const DPoly& f) {
    DPoly r(f.degree());
    for (std::size_t k = 1; k < f.c.size(); ++k) r.c[k - 1] = f.c[k] * static_cast<double>(k);
    r.c[f.degree()] = 0.0;
    return r;
}

} // namespace dp
} // namespace fibren
