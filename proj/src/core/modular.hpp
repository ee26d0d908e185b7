#pragma once

#include <optional>

#include "core/bipoly.hpp"
#include "core/curvemaps.hpp"
#include "core/torsion.hpp"
#include "core/zeta.hpp"

namespace tlab {

// Universal Tate curve y^2 + (1+(t-1)s) xy + t(t-1)s y = x^3 + t(t-1)s x^2
// with marked point (0,0), over any coefficient field.
template <class E>
std::pair<ECurve<E>, EPoint<E>> tate_universal(const E& s, const E& t) {
    E one = s.one();
    E a1 = one + (t - one) * s;
    E a2 = t * (t - one) * s;
    return {ECurve<E>(a1, a2, a2, s.zero(), s.zero()), EPoint<E>::affine(s.zero(), s.zero())};
}

// The quartic discriminant factor D with disc = -s^4 t^3 (t-1)^5 D(s,t).
BiPoly universal_disc_factor();

// The explicit order-n conditions for the universal curve (n = 13, 18).
BiPoly phi_explicit(unsigned n);

// Symbolic derivation of the order-n condition from multiples of (0,0) over
// Q(s,t); agrees with phi_explicit up to a rational unit (7 <= n <= 18).
BiPoly phi_derive(unsigned n);

Rational phi_eval(unsigned n, const Rational& s, const Rational& t);

// Plane models of Y1(13) and Y1(18) in (u, v) coordinates.
PlaneModel uv_model(unsigned n);

// Coordinate changes between the (s,t) and (u,v) presentations.
template <class E>
std::pair<E, E> uv_from_st(unsigned n, const E& s, const E& t) {
    const E one = s.one();
    if (n == 13) {
        E u = (s + one).inv() + (t - one).inv();
        E u2 = u * u;
        E v = u2 * u2 * (t - one) + u2;
        return {u, v};
    }
    if (n == 18) {
        auto sp = [&](std::initializer_list<long> asc) {
            E acc = s.zero();
            auto it = asc.end();
            while (it != asc.begin()) { --it; acc = acc * s + s.from_long(*it); }
            return acc;
        };
        E sp1 = s + one;
        E sp1_6 = sp1 * sp1;
        sp1_6 = sp1_6 * sp1_6 * sp1_6;
        E den_a = (s * sp1_6).inv();  // 1 / (s (s+1)^6)
        E den_b = sp1_6.inv();        // 1 / (s+1)^6
        E u = -sp({1, 14, 55, 68, 38, 10, 1}) * den_a * t * t * t
              - sp({-1, -12, -16, 88, 176, 135, 53, 11, 1}) * den_a * t * t
              + sp({0, 26, 116, 132, 63, 13, 1}) * den_b * t
              + sp({0, -5, -17, -8, 3, 2}) * den_b;
        return {u, u - s};
    }
    throw input_error("uv coordinates exist for n = 13, 18");
}

template <class E>
std::pair<E, E> st_from_uv(unsigned n, const E& u, const E& v) {
    const E one = u.one();
    if (n == 13) {
        E up1 = u + one;
        E s = (v + u) * (u * up1 * up1).inv() - one;
        E u2 = u * u;
        E t = (v - u2) * (u2 * u2).inv() + one;
        return {s, t};
    }
    if (n == 18) {
        auto up = [&](std::initializer_list<long> asc) {
            E acc = u.zero();
            auto it = asc.end();
            while (it != asc.begin()) { --it; acc = acc * u + u.from_long(*it); }
            return acc;
        };
        E s = u - v;
        E num = (u * u - one) * v - up({0, -1, -1, 2, 2, 1}); // (u^2-1)v - (u^5+2u^4+2u^3-u^2-u)
        E den = up({-1, 0, 3, 1});                            // u^3 + 3u^2 - 1
        return {s, num * den.inv()};
    }
    throw input_error("uv coordinates exist for n = 13, 18");
}

// Exact function-field identity: phi_n(s(u,v), t(u,v)) = 0 on the model.
bool phi_vanishes_on_model(unsigned n);

// f with v'^2 = f(u) obtained from the model by completing the square:
// f = q^2 - 4r.
QPoly hyperelliptic_form(unsigned n);

// ---- specialization family ---------------------------------------------------

struct FamilyMember {
    unsigned n = 0;
    Rational c;
    bool split = false; // quadratic algebra L = Q x Q; no field to build
    NumberField L;
    std::optional<ECurve<NFElem>> curve;
    std::optional<EPoint<NFElem>> marked;
    Integer marked_order;
};

// Fiber of the u-coordinate map over c: L = Q[v]/(v^2 - q(c) v + r(c)),
// with the curve and its order-n marked point over L.  Throws input_error on
// the excluded locus.
FamilyMember family_curve(unsigned n, const Rational& c);

// ---- false complex multiplication --------------------------------------------

// The extra endomorphism t of E(L): Galois conjugation followed by the
// canonical identification of the conjugate curve with E (for n = 18 through
// the 2-isogeny quotient).  t(t(Q)) = a Q with a = -1, +1, -2 for n = 13, 16, 18.
class FalseCMOperator {
public:
    static FalseCMOperator build(unsigned n, const ECurve<NFElem>& C);
    EPoint<NFElem> operator()(const EPoint<NFElem>& Q) const;
    unsigned n() const { return n_; }
    static int expected_square(unsigned n); // a

private:
    unsigned n_ = 0;
    ECurve<NFElem> C_;
    FieldAutomorphism sigma_;
    std::optional<TwoIsogeny<NFElem>> quotient_; // n = 18 only
    WIso<NFElem> iso_;
    FalseCMOperator(unsigned n, ECurve<NFElem> C, FieldAutomorphism s,
                    std::optional<TwoIsogeny<NFElem>> q, WIso<NFElem> iso)
        : n_(n), C_(std::move(C)), sigma_(std::move(s)), quotient_(std::move(q)), iso_(std::move(iso)) {}
};

struct FalseCMData {
    unsigned n = 0;
    int a = 0;
    unsigned samples_checked = 0;
    bool homomorphism_checked = false;
    bool ok = false;
    std::string detail;
};

// Verifies t(t(Q)) = a Q exactly on the marked point, its multiples, and any
// supplied extra points.
FalseCMData false_cm_verify(unsigned n, const ECurve<NFElem>& C, const EPoint<NFElem>& marked,
                            const std::vector<EPoint<NFElem>>& extra = {});

// n = 18: the image t(Q) of an infinite-order point is a second independent
// point ("no small relation" with Q at coefficient bound 3).
struct SecondGeneratorReport {
    EPoint<NFElem> point;
    bool infinite_certified = false;
    bool independent = false;
};
SecondGeneratorReport second_generator_18(const ECurve<NFElem>& C, const EPoint<NFElem>& Q);

// Effective degree-d divisors supported on k points: binom(k+d-1, d).
Integer cusp_divisor_count(unsigned k, unsigned d);

// The checks around the elliptic model y^2 + xy + y = x^3 + x^2 of X1(15).
struct X15Report {
    bool model_torsion_contains_z8 = false;
    bool point_order_15 = false;
    bool quartic_point_infinite = false;
    bool ok = false;
    std::string detail;
};
X15Report x15_checks();

} // namespace tlab
