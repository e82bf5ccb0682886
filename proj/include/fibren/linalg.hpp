#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "fibren/errors.hpp"

namespace fibren {

// Dense double matrix, row major. Just enough linear algebra for the Newton
// corrector and for the approximate inverse of (I - D_a); everything rigorous
// about these objects is re-verified with interval arithmetic afterwards.
struct DMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    DMatrix() = default;
    explicit DMatrix(std::size_t dim) : n(dim), a(dim * dim, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return a[r * n + c]; }
    double at(std::size_t r, std::size_t c) const { return a[r * n + c]; }

    static DMatrix eye(std::size_t dim) {
        DMatrix m(dim);
        for (std::size_t k = 0; k < dim; ++k) m.at(k, k) = 1.0;
        return m;
    }
};

struct LU {
    DMatrix lu;
    std::vector<std::size_t> perm;
};

inline LU lu_factor(DMatrix m) {
    const std::size_t n = m.n;
    std::vector<std::size_t> perm(n);
    for (std::size_t k = 0; k < n; ++k) perm[k] = k;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::fabs(m.at(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::fabs(m.at(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) throw NoConvergence("singular matrix");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m.a[piv * n + c], m.a[col * n + c]);
            std::swap(perm[piv], perm[col]);
        }
        const double d = m.at(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = m.at(r, col) / d;
            m.at(r, col) = f;
            if (f == 0.0) continue;
            for (std::size_t c = col + 1; c < n; ++c) m.at(r, c) -= f * m.at(col, c);
        }
    }
    return LU{std::move(m), std::move(perm)};
}

inline std::vector<double> lu_solve(const LU& f, const std::vector<double>& rhs) {
    const std::size_t n = f.lu.n;
    std::vector<double> x(n);
    for (std::size_t r = 0; r < n; ++r) x[r] = rhs[f.perm[r]];
    for (std::size_t r = 1; r < n; ++r) {
        double s = x[r];
        for (std::size_t c = 0; c < r; ++c) s -= f.lu.at(r, c) * x[c];
        x[r] = s;
    }
    for (std::size_t r = n; r-- > 0;) {
        double s = x[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= f.lu.at(r, c) * x[c];
        x[r] = s / f.lu.at(r, r);
    }
    return x;
}

inline DMatrix invert(const DMatrix& m) {
    const LU f = lu_factor(m);
    const std::size_t n = m.n;
    DMatrix inv(n);
    std::vector<double> e(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        e.assign(n, 0.0);
        e[c] = 1.0;
        const std::vector<double> x = lu_solve(f, e);
        for (std::size_t r = 0; r < n; ++r) inv.at(r, c) = x[r];
    }
    return inv;
}

} // namespace fibren
