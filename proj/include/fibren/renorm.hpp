#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fibren/tangent.hpp"

namespace fibren {

// Enclosure of x |-> (alpha + beta*x)^r on [-1,1] for 0 < |beta| < alpha
// (image strictly positive), via the binomial series with a certified
// geometric remainder. This carries the power factor p_v across an affine
// reparametrization without pointwise root solves.
template <class K>
typename K::Fn affine_power(std::size_t degree, const typename K::Num& alpha,
                            const typename K::Num& beta, const Rat& r) {
    using Num = typename K::Num;
    using Fn = typename K::Fn;
    if (degree < 16) throw Error("affine_power needs degree >= 16");
    const Num u = beta / alpha;
    const double mu = K::upper(u);
    if (!(mu < 1.0)) throw CombinatoricsBroken("affine image meets zero");
    const Num ad = K::pow(alpha, r);
    const Num rx = K::rat(r);

    Fn out(degree);
    Num binom = K::num(1.0); // C(r, m)
    Num upow = K::num(1.0);  // u^m
    for (std::size_t m = 0; m <= degree; ++m) {
        K::set_coeff(out, m, ad * binom * upow);
        binom = binom * (rx - K::num(static_cast<double>(m))) / K::num(static_cast<double>(m + 1));
        upow = upow * u;
    }
    if constexpr (K::rigorous) {
        // |C(r,m+1)/C(r,m)| <= 1 once m >= r, so the dropped series is
        // dominated by a geometric one with ratio mu.
        RoundingScope rs;
        const Interval muN = int_pow(Interval(mu), static_cast<std::int64_t>(degree + 1));
        const Interval rem = Interval(iv::mag(ad)) * Interval(iv::mag(binom)) * muN / (1.0 - Interval(mu));
        out.add_tail(degree, rem.hi);
    }
    return out;
}

template <class K>
struct RenormStepT {
    typename K::Num k1, k2;                              // K = [k1,k2], preimage of T
    std::pair<typename K::Num, typename K::Num> jtilde;  // left component of (phi o p_v)^{-1}(T)
    ElementT<K> result;
};

using RenormStep = RenormStepT<RigorKit>;

// Everything renormalize and its derivative share: solved points, affine
// data, and the composed function pieces.
template <class K>
struct RenormContext {
    using Num = typename K::Num;
    using Fn = typename K::Fn;

    ElementT<K> F;
    std::size_t N = 0;
    Num one;

    Num lamJ, cJ, lamK, cK, lamJt, cJt;
    Num a, b;        // psi^{-1}(t), psi^{-1}(-t)
    Num A, B;        // s_J(a), s_J(b)
    Num k1, k2;      // phi^{-1}(B), phi^{-1}(A)
    Num u_t, u_mt;   // phi^{-1}(t), phi^{-1}(-t)
    Num it, jt, tt, vt;

    Fn dpsi, dphi;
    Num dpsi_a, dpsi_b, dphi_k1, dphi_k2, dphi_ut, dphi_umt;

    Fn PJ;       // p_v o s_Jt
    Fn phi_PJ;   // phi o PJ = -t * psit
    Fn phi_sK;   // phi o s_K
    Fn W;        // s_J^{-1} o phi o s_K
    Fn psi_W;    // psi o W = t * phit
    Fn psit, phit;

    bool with_derivative = false;
    Fn dPJ;      // p_v' o s_Jt  (signed; s_Jt lands left of 0)
    Fn dphi_PJ;  // phi' o PJ
    Fn dphi_sK;  // phi' o s_K
    Fn dpsi_W;   // psi' o W
};

namespace detail {

template <class K>
typename K::Num pinv_value(const RenormContext<K>& ctx, const typename K::Num& y) {
    return K::pow((y - ctx.F.v) / (ctx.one - ctx.F.v), ctx.F.d.inv_d());
}

// Derivative of w = p_v^{-1}(y) in a direction with components (dy, dv):
// dw = (dy + (y-1)/(1-v) dv) / (d (y-v)^{(d-1)/d} (1-v)^{1/d}).
template <class K>
typename K::Num pinv_delta(const RenormContext<K>& ctx, const typename K::Num& y,
                           const typename K::Num& dy, const typename K::Num& dv) {
    const auto& F = ctx.F;
    const auto denom = K::rat(F.d.d()) * K::pow(y - F.v, F.d.dm1_over_d()) * K::pow(ctx.one - F.v, F.d.inv_d());
    return (dy + (y - ctx.one) / (ctx.one - F.v) * dv) / denom;
}

} // namespace detail

template <class K>
RenormContext<K> build_context(const ElementT<K>& F, bool with_derivative) {
    validate_element(F);
    RenormContext<K> ctx;
    ctx.F = F;
    ctx.N = F.degree();
    ctx.one = K::num(1.0);
    ctx.with_derivative = with_derivative;
    const auto half = K::num(0.5);

    ctx.dpsi = K::derivative(F.psi);
    ctx.dphi = K::derivative(F.phi);
    ctx.lamJ = (F.j - F.i) * half;
    ctx.cJ = (F.i + F.j) * half;

    auto psi_val = [&](const auto& x) { return K::eval(F.psi, x); };
    auto psi_der = [&](const auto& x) { return K::eval(ctx.dpsi, x); };
    auto phi_val = [&](const auto& x) { return K::eval(F.phi, x); };
    auto phi_der = [&](const auto& x) { return K::eval(ctx.dphi, x); };

    ctx.a = K::solve(psi_val, psi_der, F.t, K::approx(F.t));
    ctx.b = K::solve(psi_val, psi_der, -F.t, -K::approx(F.t));
    ctx.A = ctx.cJ + ctx.lamJ * ctx.a;
    ctx.B = ctx.cJ + ctx.lamJ * ctx.b;
    ctx.k2 = K::solve(phi_val, phi_der, ctx.A, K::approx(ctx.A));
    ctx.k1 = K::solve(phi_val, phi_der, ctx.B, K::approx(ctx.B));
    ctx.u_t = K::solve(phi_val, phi_der, F.t, K::approx(F.t));
    ctx.u_mt = K::solve(phi_val, phi_der, -F.t, -K::approx(F.t));

    if (!K::lt(ctx.k1, ctx.k2)) throw CombinatoricsBroken("K degenerate");
    if (!K::lt(-ctx.one, ctx.k1) || !K::lt(ctx.k2, ctx.one)) throw CombinatoricsBroken("K leaves [-1,1]");
    if (!K::lt(ctx.k1, F.v) || !K::lt(F.v, ctx.k2))
        throw CombinatoricsBroken("critical value outside K");
    if (!K::lt(F.v, ctx.u_mt) || !K::lt(ctx.u_mt, ctx.u_t))
        throw CombinatoricsBroken("preimage of T under phi misplaced");

    ctx.lamK = (ctx.k2 - ctx.k1) * half;
    ctx.cK = (ctx.k1 + ctx.k2) * half;

    ctx.it = K::num(0.0) - detail::pinv_value(ctx, ctx.u_t);
    ctx.jt = K::num(0.0) - detail::pinv_value(ctx, ctx.u_mt);
    ctx.tt = detail::pinv_value(ctx, ctx.k2);
    ctx.vt = (K::num(2.0) * F.v - ctx.k1 - ctx.k2) / (ctx.k2 - ctx.k1);

    if (!K::lt(-ctx.one, ctx.it) || !K::lt(ctx.it, ctx.jt) || !K::lt(ctx.jt, -ctx.tt))
        throw CombinatoricsBroken("renormalized intervals misordered");

    ctx.lamJt = (ctx.jt - ctx.it) * half;
    ctx.cJt = (ctx.it + ctx.jt) * half;

    try {
        const auto alpha = K::num(0.0) - ctx.cJt; // s_Jt image is negative
        const auto beta = K::num(0.0) - ctx.lamJt;
        ctx.PJ = K::affine_post(F.v, ctx.one - F.v, affine_power<K>(ctx.N, alpha, beta, F.d.d()));
        ctx.phi_PJ = K::compose(F.phi, ctx.PJ);
        ctx.psit = K::scale(ctx.phi_PJ, K::num(0.0) - ctx.one / F.t);

        ctx.phi_sK = K::affine_pre(F.phi, ctx.lamK, ctx.cK);
        ctx.W = K::affine_post(K::num(0.0) - ctx.cJ / ctx.lamJ, ctx.one / ctx.lamJ, ctx.phi_sK);
        ctx.psi_W = K::compose(F.psi, ctx.W);
        ctx.phit = K::scale(ctx.psi_W, ctx.one / F.t);

        if (with_derivative) {
            const auto minus_d_one_minus_v = K::num(0.0) - K::rat(F.d.d()) * (ctx.one - F.v);
            ctx.dPJ = K::scale(affine_power<K>(ctx.N, alpha, beta, F.d.d_minus_1()), minus_d_one_minus_v);
            ctx.dphi_PJ = K::compose(ctx.dphi, ctx.PJ);
            ctx.dphi_sK = K::affine_pre(ctx.dphi, ctx.lamK, ctx.cK);
            ctx.dpsi_W = K::compose(ctx.dpsi, ctx.W);
        }
    } catch (const RangeViolation& e) {
        throw CombinatoricsBroken(std::string("composition range violated: ") + e.what());
    }

    ctx.dpsi_a = K::eval(ctx.dpsi, ctx.a);
    ctx.dpsi_b = K::eval(ctx.dpsi, ctx.b);
    ctx.dphi_k1 = K::eval(ctx.dphi, ctx.k1);
    ctx.dphi_k2 = K::eval(ctx.dphi, ctx.k2);
    ctx.dphi_ut = K::eval(ctx.dphi, ctx.u_t);
    ctx.dphi_umt = K::eval(ctx.dphi, ctx.u_mt);
    return ctx;
}

template <class K>
RenormStepT<K> renorm_step(const RenormContext<K>& ctx) {
    RenormStepT<K> s;
    s.k1 = ctx.k1;
    s.k2 = ctx.k2;
    s.jtilde = {ctx.it, ctx.jt};
    s.result = ElementT<K>{ctx.F.d, ctx.vt, ctx.it, ctx.jt, ctx.tt, ctx.psit, ctx.phit};
    validate_element(s.result);
    return s;
}

// The renormalization operator on the sextuple space. Both orientations of
// the J-branch induce the same operator (p_v o r_{J+} = p_v o s_{J-}), so a
// single branch implements the period-2 dynamical cycle.
template <class K>
RenormStepT<K> renormalize(const ElementT<K>& F) {
    return renorm_step(build_context<K>(F, false));
}

// Values of a direction's function components at the context's solved points
// and through its inner compositions. Everything a derivative needs from h.
template <class K>
struct DirectionImages {
    typename K::Num psi_a{}, psi_b{};
    typename K::Num phi_k1{}, phi_k2{}, phi_ut{}, phi_umt{};
    typename K::Fn phi_on_PJ, phi_on_sK, psi_on_W;
};

template <class K>
DirectionImages<K> direction_images(const RenormContext<K>& ctx, const TangentT<K>& h) {
    DirectionImages<K> im;
    const bool zpsi = K::is_zero(h.dpsi), zphi = K::is_zero(h.dphi);
    im.psi_a = zpsi ? K::num(0.0) : K::eval(h.dpsi, ctx.a);
    im.psi_b = zpsi ? K::num(0.0) : K::eval(h.dpsi, ctx.b);
    im.psi_on_W = zpsi ? typename K::Fn(ctx.N) : K::compose(h.dpsi, ctx.W);
    im.phi_k1 = zphi ? K::num(0.0) : K::eval(h.dphi, ctx.k1);
    im.phi_k2 = zphi ? K::num(0.0) : K::eval(h.dphi, ctx.k2);
    im.phi_ut = zphi ? K::num(0.0) : K::eval(h.dphi, ctx.u_t);
    im.phi_umt = zphi ? K::num(0.0) : K::eval(h.dphi, ctx.u_mt);
    im.phi_on_PJ = zphi ? typename K::Fn(ctx.N) : K::compose(h.dphi, ctx.PJ);
    im.phi_on_sK = zphi ? typename K::Fn(ctx.N) : K::affine_pre(h.dphi, ctx.lamK, ctx.cK);
    return im;
}

// Chain rule through the renormalization formulas in a general direction.
// k1 = phi^{-1}(s_J(psi^{-1}(-t))), k2 likewise at +t; Jt and tt through
// p_v^{-1}; vt through s_K^{-1}; psit = r_T^{-1} o phi o p_v o s_Jt and
// phit = s_T^{-1} o psi o s_J^{-1} o phi o s_K.
template <class K>
TangentT<K> apply_derivative(const RenormContext<K>& ctx, const typename K::Num& dv,
                             const typename K::Num& di, const typename K::Num& dj,
                             const typename K::Num& dt, const DirectionImages<K>& im) {
    using Num = typename K::Num;
    if (!ctx.with_derivative) throw Error("context built without derivative data");
    const auto& F = ctx.F;
    const Num half = K::num(0.5);
    const Num one = ctx.one;

    const Num dlamJ = (dj - di) * half;
    const Num dcJ = (di + dj) * half;
    const Num da = (dt - im.psi_a) / ctx.dpsi_a;
    const Num db = (K::num(0.0) - dt - im.psi_b) / ctx.dpsi_b;
    const Num dA = dcJ + dlamJ * ctx.a + ctx.lamJ * da;
    const Num dB = dcJ + dlamJ * ctx.b + ctx.lamJ * db;
    const Num dk2 = (dA - im.phi_k2) / ctx.dphi_k2;
    const Num dk1 = (dB - im.phi_k1) / ctx.dphi_k1;

    TangentT<K> out = TangentT<K>::zero(ctx.N);
    out.dv = (K::num(2.0) * dv - dk1 - dk2 - ctx.vt * (dk2 - dk1)) / (ctx.k2 - ctx.k1);
    out.dt = detail::pinv_delta(ctx, ctx.k2, dk2, dv);

    const Num du_t = (dt - im.phi_ut) / ctx.dphi_ut;
    const Num du_mt = (K::num(0.0) - dt - im.phi_umt) / ctx.dphi_umt;
    out.di = K::num(0.0) - detail::pinv_delta(ctx, ctx.u_t, du_t, dv);
    out.dj = K::num(0.0) - detail::pinv_delta(ctx, ctx.u_mt, du_mt, dv);

    // dpsit = dt*phi(PJ)/t^2 - (1/t) [ dphi o PJ + phi'(PJ)(dp_v/dv * dv + p_v'(s_Jt) * ds_Jt) ]
    const Num dlamJt = (out.dj - out.di) * half;
    const Num dcJt = (out.di + out.dj) * half;
    const auto E1 = K::affine_fn(ctx.N, dlamJt, dcJt);
    const Num inv1mv = one / (one - F.v);
    const auto dvp = K::affine_post(inv1mv, K::num(0.0) - inv1mv, ctx.PJ); // (1 - p_v o s_Jt)/(1-v)
    const auto dP = K::add(K::scale(dvp, dv), K::mul(ctx.dPJ, E1));
    const auto bracket = K::add(im.phi_on_PJ, K::mul(ctx.dphi_PJ, dP));
    out.dpsi = K::add(K::scale(ctx.phi_PJ, dt / (F.t * F.t)),
                      K::scale(bracket, K::num(0.0) - one / F.t));

    // dphit = -dt*psi(W)/t^2 + (1/t) [ dpsi o W + psi'(W) dW ],
    // dW = (dphi o s_K + phi'(s_K) ds_K - dc_J)/lam_J - W dlam_J/lam_J
    const auto E2 = K::affine_fn(ctx.N, (dk2 - dk1) * half, (dk2 + dk1) * half);
    const auto dPhi = K::add(im.phi_on_sK, K::mul(ctx.dphi_sK, E2));
    const auto dW = K::add(K::scale(K::add_const(dPhi, K::num(0.0) - dcJ), one / ctx.lamJ),
                           K::scale(ctx.W, K::num(0.0) - dlamJ / ctx.lamJ));
    out.dphi = K::add(K::scale(ctx.psi_W, K::num(0.0) - dt / (F.t * F.t)),
                      K::scale(K::add(im.psi_on_W, K::mul(ctx.dpsi_W, dW)), one / F.t));
    return out;
}

template <class K>
TangentT<K> apply_derivative(const RenormContext<K>& ctx, const TangentT<K>& h) {
    return apply_derivative(ctx, h.dv, h.di, h.dj, h.dt, direction_images(ctx, h));
}

template <class K>
TangentT<K> apply_derivative(const ElementT<K>& F, const TangentT<K>& h) {
    const auto ctx = build_context<K>(F, true);
    return apply_derivative(ctx, h);
}

// ---------------------------------------------------------------------------
// Matrix of the derivative over span{h1..h4, eta_0..eta_K, phi_0..phi_K}.

template <class K>
struct DerivMatrixT {
    std::size_t kbasis = 0;
    std::size_t dim = 0; // 2*(kbasis+1) + 4
    std::vector<typename K::Num> entries; // row-major dim x dim
    std::vector<double> remainder;        // per column: output mass beyond the basis rows
    double tail_col_psi = 0.0, tail_col_phi = 0.0; // norms of the unit-tail columns

    typename K::Num& at(std::size_t r, std::size_t c) { return entries[r * dim + c]; }
    const typename K::Num& at(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }
};

using DerivativeMatrix = DerivMatrixT<RigorKit>;

namespace detail {

template <class K>
void store_column(DerivMatrixT<K>& m, std::size_t col, const TangentT<K>& u) {
    const std::size_t kb = m.kbasis;
    m.at(0, col) = u.dv;
    m.at(1, col) = u.di;
    m.at(2, col) = u.dj;
    m.at(3, col) = u.dt;
    for (std::size_t k = 0; k <= kb; ++k) {
        m.at(4 + k, col) = K::get_coeff(u.dpsi, k);
        m.at(5 + kb + k, col) = K::get_coeff(u.dphi, k);
    }
    double rem = 0.0;
    if constexpr (K::rigorous) {
        for (std::size_t k = 0; k < u.dpsi.size(); ++k) {
            if (k > kb) rem += iv::mag(u.dpsi.coeff(k)) + iv::mag(u.dphi.coeff(k));
            rem += u.dpsi.tail(k) + u.dphi.tail(k);
        }
    }
    m.remainder[col] = rem;
}

} // namespace detail

// Interval (or plain, in the fast kit) matrix of the derivative restricted to
// the finite basis, plus rigorous bounds for its action on the complement
// span{x^k : k > kbasis} computed with unit-tail standard sets.
template <class K>
DerivMatrixT<K> derivative_matrix(const RenormContext<K>& ctx, std::size_t kbasis) {
    using Fn = typename K::Fn;
    if (kbasis > ctx.N) throw Error("basis cut exceeds truncation degree");
    DerivMatrixT<K> m;
    m.kbasis = kbasis;
    m.dim = 2 * (kbasis + 1) + 4;
    m.entries.assign(m.dim * m.dim, K::num(0.0));
    m.remainder.assign(m.dim, 0.0);

    const Fn zero(ctx.N);
    const Fn sK = K::affine_fn(ctx.N, ctx.lamK, ctx.cK);
    DirectionImages<K> im;
    im.phi_on_PJ = zero;
    im.phi_on_sK = zero;
    im.psi_on_W = zero;

    // scalar directions
    const typename K::Num zeroN = K::num(0.0), oneN = K::num(1.0);
    detail::store_column(m, 0, apply_derivative(ctx, oneN, zeroN, zeroN, zeroN, im));
    detail::store_column(m, 1, apply_derivative(ctx, zeroN, oneN, zeroN, zeroN, im));
    detail::store_column(m, 2, apply_derivative(ctx, zeroN, zeroN, oneN, zeroN, im));
    detail::store_column(m, 3, apply_derivative(ctx, zeroN, zeroN, zeroN, oneN, im));

    // monomial directions; powers of the inner pieces are shared across k
    Fn Wk = K::constant(ctx.N, oneN);
    Fn PJk = K::constant(ctx.N, oneN);
    Fn sKk = K::constant(ctx.N, oneN);
    for (std::size_t k = 0; k <= kbasis; ++k) {
        DirectionImages<K> ePsi;
        ePsi.psi_a = K::ipow_signed(ctx.a, k);
        ePsi.psi_b = K::ipow_signed(ctx.b, k);
        ePsi.psi_on_W = Wk;
        ePsi.phi_on_PJ = zero;
        ePsi.phi_on_sK = zero;
        detail::store_column(m, 4 + k, apply_derivative(ctx, zeroN, zeroN, zeroN, zeroN, ePsi));

        DirectionImages<K> ePhi;
        ePhi.phi_k1 = K::ipow_signed(ctx.k1, k);
        ePhi.phi_k2 = K::ipow_signed(ctx.k2, k);
        ePhi.phi_ut = K::ipow_signed(ctx.u_t, k);
        ePhi.phi_umt = K::ipow_signed(ctx.u_mt, k);
        ePhi.phi_on_PJ = PJk;
        ePhi.phi_on_sK = sKk;
        ePhi.psi_on_W = zero;
        detail::store_column(m, 5 + kbasis + k, apply_derivative(ctx, zeroN, zeroN, zeroN, zeroN, ePhi));

        if (k < kbasis) {
            Wk = K::mul(Wk, ctx.W);
            PJk = K::mul(PJk, ctx.PJ);
            sKk = K::mul(sKk, sK);
        }
    }

    // action on the tail complement: any direction x^m, m > kbasis, with unit
    // l1 norm is a member of the pure-tail standard set {D[0,0],...,D[0,1]}
    if constexpr (K::rigorous) {
        const std::size_t slot = std::min(kbasis + 1, ctx.N);
        const Fn tail = Fn::tail_unit(ctx.N, slot, 1.0);
        TangentT<K> hpsi = TangentT<K>::zero(ctx.N);
        hpsi.dpsi = tail;
        m.tail_col_psi = tangent_norm<K>(apply_derivative(ctx, hpsi));
        TangentT<K> hphi = TangentT<K>::zero(ctx.N);
        hphi.dphi = tail;
        m.tail_col_phi = tangent_norm<K>(apply_derivative(ctx, hphi));
    }
    return m;
}

template <class K>
DerivMatrixT<K> derivative_matrix(const ElementT<K>& F, std::size_t kbasis) {
    return derivative_matrix(build_context<K>(F, true), kbasis);
}

// Upper bound on the l1 operator norm of the restricted derivative (max
// column mass including the off-basis remainder and the tail columns).
template <class K>
double matrix_norm_bound(const DerivMatrixT<K>& m) {
    double best = 0.0;
    for (std::size_t c = 0; c < m.dim; ++c) {
        double s = m.remainder[c];
        for (std::size_t r = 0; r < m.dim; ++r) s += K::upper(m.at(r, c));
        best = std::max(best, s);
    }
    return std::max(best, std::max(m.tail_col_psi, m.tail_col_phi));
}

} // namespace fibren
