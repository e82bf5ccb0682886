#pragma once

#include <cstddef>

#include "fibren/element.hpp"

namespace fibren {

// Perturbation of an element, decomposed over the monomial basis
// h1 = dv, h2 = di, h3 = dj, h4 = dt, eta_k = x^k in psi, phi_k = x^k in phi.
template <class K>
struct TangentT {
    typename K::Num dv{}, di{}, dj{}, dt{};
    typename K::Fn dpsi, dphi;

    static TangentT zero(std::size_t degree) {
        TangentT h;
        h.dpsi = typename K::Fn(degree);
        h.dphi = typename K::Fn(degree);
        return h;
    }
};

using TangentVector = TangentT<RigorKit>;
using DTangent = TangentT<FastKit>;

enum class BasisKind { V, I, J, T, PsiCoeff, PhiCoeff, PsiTail, PhiTail };

struct BasisDirection {
    BasisKind kind;
    std::size_t order = 0; // for PsiCoeff/PhiCoeff
};

template <class K>
TangentT<K> basis_tangent(std::size_t degree, const BasisDirection& b) {
    TangentT<K> h = TangentT<K>::zero(degree);
    switch (b.kind) {
        case BasisKind::V: h.dv = K::num(1.0); break;
        case BasisKind::I: h.di = K::num(1.0); break;
        case BasisKind::J: h.dj = K::num(1.0); break;
        case BasisKind::T: h.dt = K::num(1.0); break;
        case BasisKind::PsiCoeff: h.dpsi = K::Fn::monomial(degree, b.order); break;
        case BasisKind::PhiCoeff: h.dphi = K::Fn::monomial(degree, b.order); break;
        default: throw Error("tail directions have no exact basis tangent");
    }
    return h;
}

template <class K>
double tangent_norm(const TangentT<K>& h) {
    return K::upper(h.dv) + K::upper(h.di) + K::upper(h.dj) + K::upper(h.dt) + K::norm(h.dpsi) +
           K::norm(h.dphi);
}

template <class K>
TangentT<K> tangent_add(const TangentT<K>& a, const TangentT<K>& b) {
    TangentT<K> r;
    r.dv = a.dv + b.dv;
    r.di = a.di + b.di;
    r.dj = a.dj + b.dj;
    r.dt = a.dt + b.dt;
    r.dpsi = K::add(a.dpsi, b.dpsi);
    r.dphi = K::add(a.dphi, b.dphi);
    return r;
}

template <class K>
TangentT<K> tangent_scale(const TangentT<K>& a, const typename K::Num& s) {
    TangentT<K> r;
    r.dv = a.dv * s;
    r.di = a.di * s;
    r.dj = a.dj * s;
    r.dt = a.dt * s;
    r.dpsi = K::scale(a.dpsi, s);
    r.dphi = K::scale(a.dphi, s);
    return r;
}

// Difference of elements as a tangent (used for residuals).
template <class K>
TangentT<K> element_sub(const ElementT<K>& a, const ElementT<K>& b) {
    TangentT<K> r;
    r.dv = a.v - b.v;
    r.di = a.i - b.i;
    r.dj = a.j - b.j;
    r.dt = a.t - b.t;
    r.dpsi = K::sub(a.psi, b.psi);
    r.dphi = K::sub(a.phi, b.phi);
    return r;
}

template <class K>
ElementT<K> element_add_tangent(const ElementT<K>& a, const TangentT<K>& h) {
    ElementT<K> r = a;
    r.v = a.v + h.dv;
    r.i = a.i + h.di;
    r.j = a.j + h.dj;
    r.t = a.t + h.dt;
    r.psi = K::add(a.psi, h.dpsi);
    r.phi = K::add(a.phi, h.dphi);
    return r;
}

} // namespace fibren
