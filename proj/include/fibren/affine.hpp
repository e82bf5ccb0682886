#pragma once

#include "fibren/enclosure.hpp"
#include "fibren/interval.hpp"

namespace fibren {

// Affine change of coordinates between [-1,1] and an interval I = [a,b]:
// s_I (orientation preserving) or r_I (reversing). Endpoints may be certified
// enclosures, so the slope and center are intervals.
struct AffineMap {
    Interval lam; // half-width of I
    Interval c;   // center of I
    bool reversing = false;

    AffineMap() = default;
    AffineMap(const Interval& left, const Interval& right, bool rev) : reversing(rev) {
        lam = (right - left) * 0.5;
        c = (left + right) * 0.5;
        if (!(lam.lo > 0.0)) throw DegenerateAffine();
    }
    static AffineMap over(const Interval& domain, bool rev) {
        return AffineMap(Interval(domain.lo), Interval(domain.hi), rev);
    }

    Interval signed_lam() const { return reversing ? -lam : lam; }

    // [-1,1] -> I
    Interval from_unit(const Interval& x) const { return c + signed_lam() * x; }
    // I -> [-1,1]
    Interval to_unit(const Interval& y) const {
        const Interval u = (y - c) / lam;
        return reversing ? -u : u;
    }
};

namespace enc {

// f composed with the parametrization [-1,1] -> I of a (the "pre" factor of an
// affine-function-affine sandwich). Exact degree.
inline FuncEnclosure compose_affine_pre(const FuncEnclosure& f, const AffineMap& a) {
    return affine_pre(f, a.signed_lam(), a.c);
}

// Rescale of the values of f by a.to_unit (the "post" factor).
inline FuncEnclosure compose_affine_post(const AffineMap& a, const FuncEnclosure& f) {
    FIBREN_ASSERT_ROUNDING();
    const Interval inv_lam = Interval(1.0) / a.lam;
    const Interval b = a.reversing ? -inv_lam : inv_lam;
    return affine_post(-(a.c * b), b, f);
}

} // namespace enc
} // namespace fibren
