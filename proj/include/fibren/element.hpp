#pragma once

#include <cstddef>

#include "fibren/degree.hpp"
#include "fibren/kits.hpp"

namespace fibren {

// A map of the sextuple space: F = (v, i, j, t, psi, phi) with critical degree
// d. On J = [i,j] the map is +-psi(s_J^{-1}(x)); on T = [-t,t] it is
// phi(p_v(s_T^{-1}(x))) with p_v(x) = v + (1-v)|x|^d, p_v(+-1) = 1 structural.
// J lies to the left of T for the maps handled here.
template <class K>
struct ElementT {
    Degree d;
    typename K::Num v, i, j, t;
    typename K::Fn psi, phi;

    std::size_t degree() const { return psi.degree(); }
};

using RenormElement = ElementT<RigorKit>;
using DElement = ElementT<FastKit>;

template <class K>
void validate_element(const ElementT<K>& F) {
    if (!F.d.exceeds_two()) throw CombinatoricsBroken("critical degree must exceed 2");
    if (F.psi.degree() != F.phi.degree()) throw CombinatoricsBroken("psi/phi degree mismatch");
    const auto one = K::num(1.0);
    if (!K::lt(-one, F.i)) throw CombinatoricsBroken("i not above -1");
    if (!K::lt(F.i, F.j)) throw CombinatoricsBroken("i < j violated");
    if (!K::lt(F.j, -F.t)) throw CombinatoricsBroken("J and T overlap");
    if (!K::lt(K::num(0.0), F.t)) throw CombinatoricsBroken("t not positive");
    if (!K::lt(F.t, one)) throw CombinatoricsBroken("T leaves [-1,1]");
    if (K::lt(F.v, -one) || K::lt(one, F.v)) throw CombinatoricsBroken("v outside [-1,1]");
}

// l1 norm of the sextuple (scalar magnitudes plus function norms).
template <class K>
double element_norm(const ElementT<K>& F) {
    return K::upper(F.v) + K::upper(F.i) + K::upper(F.j) + K::upper(F.t) + K::norm(F.psi) + K::norm(F.phi);
}

// Widen every field of a rigorous element by an l1 ball of radius r: scalars
// get [-r, r], functions a degree-0 tail of r. Encloses the whole ball.
inline RenormElement inflate(const RenormElement& F, double r) {
    RenormElement g = F;
    const Interval ball = iv::make(-r, r);
    g.v += ball;
    g.i += ball;
    g.j += ball;
    g.t += ball;
    g.psi.add_tail(0, r);
    g.phi.add_tail(0, r);
    return g;
}

// Evaluation of the power factor p_v on x inside [-1,1].
template <class K>
typename K::Num power_map_eval(const typename K::Num& v, const Degree& d, const typename K::Num& x) {
    return v + (K::num(1.0) - v) * K::pow(K::abs(x), d.d());
}

} // namespace fibren
