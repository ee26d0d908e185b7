#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "core/integer.hpp"
#include "core/poly.hpp"

namespace tlab {

// Point on a long-Weierstrass curve over a field with element type E.
template <class E>
struct EPoint {
    bool inf = true;
    E x{}, y{};

    static EPoint infinity(const E& proto) { return EPoint{true, proto.zero(), proto.zero()}; }
    static EPoint affine(E px, E py) { return EPoint{false, std::move(px), std::move(py)}; }

    bool operator==(const EPoint& o) const {
        if (inf || o.inf) return inf == o.inf;
        return x == o.x && y == o.y;
    }
    bool operator!=(const EPoint& o) const { return !(*this == o); }
};

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with the usual derived
// quantities; the group law below is the two-variable chord-tangent law,
// valid in every characteristic.
template <class E>
class ECurve {
public:
    E a1, a2, a3, a4, a6;
    E b2, b4, b6, b8, c4, c6, disc;

    ECurve(E A1, E A2, E A3, E A4, E A6)
        : a1(std::move(A1)), a2(std::move(A2)), a3(std::move(A3)), a4(std::move(A4)), a6(std::move(A6)),
          b2(a1.zero()), b4(a1.zero()), b6(a1.zero()), b8(a1.zero()), c4(a1.zero()), c6(a1.zero()), disc(a1.zero()) {
        const E two = a1.from_long(2), three = a1.from_long(3), four = a1.from_long(4);
        b2 = a1 * a1 + four * a2;
        b4 = two * a4 + a1 * a3;
        b6 = a3 * a3 + four * a6;
        b8 = a1 * a1 * a6 + four * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        c4 = b2 * b2 - a1.from_long(24) * b4;
        c6 = -(b2 * b2 * b2) + a1.from_long(36) * b2 * b4 - a1.from_long(216) * b6;
        disc = -(b2 * b2) * b8 - a1.from_long(8) * (b4 * b4 * b4) - a1.from_long(27) * (b6 * b6) +
               a1.from_long(9) * b2 * b4 * b6;
        (void)three;
        if (disc.is_zero()) throw input_error("singular Weierstrass equation");
    }

    const E& proto() const { return a1; }
    E j() const { return c4 * c4 * c4 * disc.inv(); }

    bool operator==(const ECurve& o) const {
        return a1 == o.a1 && a2 == o.a2 && a3 == o.a3 && a4 == o.a4 && a6 == o.a6;
    }

    E rhs_cubic(const E& x) const { return ((x + a2) * x + a4) * x + a6; }

    bool on_curve(const EPoint<E>& P) const {
        if (P.inf) return true;
        E lhs = P.y * P.y + a1 * P.x * P.y + a3 * P.y;
        return lhs == rhs_cubic(P.x);
    }

    EPoint<E> neg(const EPoint<E>& P) const {
        if (P.inf) return P;
        return EPoint<E>::affine(P.x, -P.y - a1 * P.x - a3);
    }

    EPoint<E> add(const EPoint<E>& P, const EPoint<E>& Q) const {
        if (P.inf) return Q;
        if (Q.inf) return P;
        E lambda = a1.zero(), nu = a1.zero();
        if (P.x == Q.x) {
            // Q == -P?
            if (Q.y == -P.y - a1 * P.x - a3) return EPoint<E>::infinity(a1);
            // tangent line
            E den = a1.from_long(2) * P.y + a1 * P.x + a3;
            E dinv = den.inv();
            lambda = (a1.from_long(3) * P.x * P.x + a1.from_long(2) * a2 * P.x + a4 - a1 * P.y) * dinv;
            nu = (-(P.x * P.x * P.x) + a4 * P.x + a1.from_long(2) * a6 - a3 * P.y) * dinv;
        } else {
            E dinv = (Q.x - P.x).inv();
            lambda = (Q.y - P.y) * dinv;
            nu = (P.y * Q.x - Q.y * P.x) * dinv;
        }
        E x3 = lambda * lambda + a1 * lambda - a2 - P.x - Q.x;
        E y3 = -(lambda + a1) * x3 - nu - a3;
        return EPoint<E>::affine(x3, y3);
    }

    EPoint<E> dbl(const EPoint<E>& P) const { return add(P, P); }

    EPoint<E> sub(const EPoint<E>& P, const EPoint<E>& Q) const { return add(P, neg(Q)); }

    EPoint<E> mul(Integer k, EPoint<E> P) const {
        if (k.sign() < 0) {
            k = -k;
            P = neg(P);
        }
        EPoint<E> acc = EPoint<E>::infinity(a1);
        while (k.sign() > 0) {
            if (k.odd()) acc = add(acc, P);
            P = dbl(P);
            k = k / Integer(2);
        }
        return acc;
    }

    EPoint<E> mul(long k, const EPoint<E>& P) const { return mul(Integer(k), P); }

    // 2y + a1 x + a3, zero exactly on 2-torsion
    E psi2_at(const EPoint<E>& P) const { return a1.from_long(2) * P.y + a1 * P.x + a3; }

    // Solutions y of the curve equation at given x (odd/zero characteristic).
    std::vector<E> lift_x(const E& x, const std::function<std::optional<E>(const E&)>& sqrt_fn) const {
        std::vector<E> ys;
        E b = a1 * x + a3;
        E c = -rhs_cubic(x);
        // y^2 + by + c = 0
        E d = b * b - a1.from_long(4) * c;
        auto r = sqrt_fn(d);
        if (!r) return ys;
        E half = a1.from_long(2).inv();
        ys.push_back((-b + *r) * half);
        if (!r->is_zero()) ys.push_back((-b - *r) * half);
        return ys;
    }
};

// Tate normal form y^2 + a xy + b y = x^3 + b x^2 with marked point (0,0).
template <class E>
std::pair<ECurve<E>, EPoint<E>> curve_from_tate(const E& a, const E& b) {
    ECurve<E> c(a, b, b, a.zero(), a.zero());
    return {c, EPoint<E>::affine(a.zero(), a.zero())};
}

// x-only division polynomial bookkeeping: psi_n = f_n * psi2^(n even) with
// psi2^2 replaced by T = 4x^3 + b2 x^2 + 2 b4 x + b6.
template <class E>
UniPoly<E> two_division_cubic(const ECurve<E>& C) {
    const E& pr = C.proto();
    return UniPoly<E>(pr, {C.b6, C.b4 * pr.from_long(2), C.b2, pr.from_long(4)});
}

template <class E>
std::vector<UniPoly<E>> division_poly_table(const ECurve<E>& C, unsigned n) {
    const E& pr = C.proto();
    const UniPoly<E> T = two_division_cubic(C);
    std::vector<UniPoly<E>> f(std::max(5u, n + 1), UniPoly<E>(pr));
    auto cpoly = [&](std::vector<E> v) { return UniPoly<E>(pr, std::move(v)); };
    f[0] = UniPoly<E>(pr);
    f[1] = UniPoly<E>::constant(pr.one());
    if (n >= 2) f[2] = UniPoly<E>::constant(pr.one());
    if (n >= 3)
        f[3] = cpoly({C.b8, C.b6 * pr.from_long(3), C.b4 * pr.from_long(3), C.b2, pr.from_long(3)});
    if (n >= 4)
        f[4] = cpoly({C.b4 * C.b8 - C.b6 * C.b6, C.b2 * C.b8 - C.b4 * C.b6, C.b8 * pr.from_long(10),
                      C.b6 * pr.from_long(10), C.b4 * pr.from_long(5), C.b2, pr.from_long(2)});
    const UniPoly<E> T2 = T * T;
    for (unsigned k = 5; k <= n; ++k) {
        unsigned m = k / 2;
        if (k % 2 == 1) {
            // f_{2m+1} = f_{m+2} f_m^3 - f_{m-1} f_{m+1}^3, with T^2 on the even side
            auto A = f[m + 2] * f[m] * f[m] * f[m];
            auto B = f[m - 1] * f[m + 1] * f[m + 1] * f[m + 1];
            f[k] = (m % 2 == 0) ? T2 * A - B : A - T2 * B;
        } else {
            f[k] = f[m] * (f[m + 2] * f[m - 1] * f[m - 1] - f[m - 2] * f[m + 1] * f[m + 1]);
        }
    }
    f.resize(n + 1, UniPoly<E>(pr));
    return f;
}

// Polynomial in x whose roots are the x-coordinates of the nonzero n-torsion
// (for even n this includes the 2-torsion cubic factor).
template <class E>
UniPoly<E> division_poly(const ECurve<E>& C, unsigned n) {
    if (n < 1) throw input_error("division_poly: n >= 1");
    if (n == 1) return UniPoly<E>::constant(C.proto().one());
    auto f = division_poly_table(C, n);
    if (n % 2 == 0) return f[n] * two_division_cubic(C);
    return f[n];
}

// Factor of division_poly(n) whose roots are x-coordinates of points of
// exact order n (n >= 2).
template <class E>
UniPoly<E> division_poly_primitive(const ECurve<E>& C, unsigned n) {
    UniPoly<E> g = division_poly(C, n);
    for (unsigned d = 2; d < n; ++d)
        if (n % d == 0) g = exact_div(g, division_poly_primitive(C, d));
    return g;
}

// x([2]R) = (x^4 - b4 x^2 - 2 b6 x - b8) / T(x); equating to x(P) yields the
// quartic whose roots are the x-coordinates of the halvings of P.
template <class E>
UniPoly<E> halving_preimage_poly(const ECurve<E>& C, const EPoint<E>& P) {
    if (P.inf) throw input_error("halving_preimage_poly: P must be affine");
    const E& pr = C.proto();
    UniPoly<E> num(pr, {-C.b8, -(pr.from_long(2) * C.b6), -C.b4, pr.zero(), pr.one()});
    return num - two_division_cubic(C).scaled(P.x);
}

template <class E>
ECurve<E> quadratic_twist(const ECurve<E>& C, const E& d) {
    if (d.is_zero()) throw input_error("twist by zero");
    // twist of the b-form: y^2 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4, scale by d
    const E four_inv = d.from_long(4).inv();
    const E A2 = C.b2 * four_inv * d;
    const E A4 = C.b4 * d.from_long(2).inv() * d * d;
    const E A6 = C.b6 * four_inv * d * d * d;
    return ECurve<E>(d.zero(), A2, d.zero(), A4, A6);
}

// Coordinate change phi: E -> E' given by x = u^2 x' + r, y = u^3 y' + s u^2 x' + t;
// on points phi(x, y) = ((x - r)/u^2, (y - s(x - r) - t)/u^3).
template <class E>
struct WIso {
    E u, r, s, t;

    static WIso identity(const E& proto) { return {proto.one(), proto.zero(), proto.zero(), proto.zero()}; }

    EPoint<E> apply(const EPoint<E>& P) const {
        if (P.inf) return P;
        E u2i = (u * u).inv();
        E xr = P.x - r;
        return EPoint<E>::affine(xr * u2i, (P.y - s * xr - t) * u2i * u.inv());
    }

    WIso inverse() const {
        E ui = u.inv(), u2i = ui * ui;
        return {ui, -r * u2i, -s * ui, (s * r - t) * u2i * ui};
    }

    WIso then(const WIso& second) const {
        // apply *this, then second
        return {u * second.u, r + u * u * second.r, s + u * second.s,
                t + u * u * second.r * s + u * u * u * second.t};
    }
};

template <class E>
ECurve<E> transform_curve(const ECurve<E>& C, const WIso<E>& w) {
    const E two = C.proto().from_long(2), three = C.proto().from_long(3);
    E ui = w.u.inv();
    E u2 = ui * ui, u3 = u2 * ui, u4 = u2 * u2, u6 = u3 * u3;
    E A1 = (C.a1 + two * w.s) * ui;
    E A2 = (C.a2 - w.s * C.a1 + three * w.r - w.s * w.s) * u2;
    E A3 = (C.a3 + w.r * C.a1 + two * w.t) * u3;
    E A4 = (C.a4 - w.s * C.a3 + two * w.r * C.a2 - (w.t + w.r * w.s) * C.a1 + three * w.r * w.r -
            two * w.s * w.t) * u4;
    E A6 = (C.a6 + w.r * C.a4 + w.r * w.r * C.a2 + w.r * w.r * w.r - w.t * C.a3 - w.t * w.t -
            w.r * w.t * C.a1) * u6;
    return ECurve<E>(A1, A2, A3, A4, A6);
}

// Short Weierstrass model (characteristic not 2 or 3): returns the model and
// the iso from C to it.
template <class E>
std::pair<ECurve<E>, WIso<E>> short_form(const ECurve<E>& C) {
    const E& pr = C.proto();
    WIso<E> w1{pr.one(), pr.zero(), -(C.a1 * pr.from_long(2).inv()), -(C.a3 * pr.from_long(2).inv())};
    WIso<E> w2{pr.one(), -(C.b2 * pr.from_long(12).inv()), pr.zero(), pr.zero()};
    WIso<E> w = w1.then(w2);
    return {transform_curve(C, w), w};
}

// Degree-2 isogeny by Velu's formulas, kernel {O, T} with T 2-torsion.
template <class E>
struct TwoIsogeny {
    ECurve<E> domain;
    ECurve<E> codomain;
    EPoint<E> kernel;
    E gx; // t_T in Velu's notation

    EPoint<E> apply(const EPoint<E>& P) const {
        if (P.inf || P == kernel) return EPoint<E>::infinity(domain.proto());
        E dx = P.x - kernel.x;
        E dxi = dx.inv();
        E X = P.x + gx * dxi;
        E Y = P.y - gx * (domain.a1 * dx + P.y - kernel.y) * dxi * dxi;
        return EPoint<E>::affine(X, Y);
    }
};

template <class E>
TwoIsogeny<E> velu2(const ECurve<E>& C, const EPoint<E>& T) {
    if (T.inf || !C.psi2_at(T).is_zero() || !C.on_curve(T))
        throw input_error("velu2: kernel point must be affine 2-torsion");
    const E& pr = C.proto();
    E gx = pr.from_long(3) * T.x * T.x + pr.from_long(2) * C.a2 * T.x + C.a4 - C.a1 * T.y;
    E t = gx;
    E w = T.x * gx;
    ECurve<E> im(C.a1, C.a2, C.a3, C.a4 - pr.from_long(5) * t,
                 C.a6 - C.b2 * t - pr.from_long(7) * w);
    return TwoIsogeny<E>{C, im, T, gx};
}

// Isomorphism search between curves over a field of characteristic 0 or >= 5.
// sqrt_fn returns a square root in the field when one exists; cuberoots_fn
// lists the cube roots in the field (used only for j = 0).
template <class E>
std::optional<WIso<E>> find_isomorphism(const ECurve<E>& C1, const ECurve<E>& C2,
                                        const std::function<std::optional<E>(const E&)>& sqrt_fn,
                                        const std::function<std::vector<E>(const E&)>& cuberoots_fn) {
    auto [S1, w1] = short_form(C1);
    auto [S2, w2] = short_form(C2);
    const E A1 = S1.a4, B1 = S1.a6, A2 = S2.a4, B2 = S2.a6;
    std::vector<E> u2_candidates;
    if (!A1.is_zero() && !A2.is_zero() && !B1.is_zero() && !B2.is_zero()) {
        u2_candidates.push_back((B1 * A2) * (B2 * A1).inv());
    } else if (A1.is_zero() && A2.is_zero()) {
        // j = 0: u^6 = B1/B2
        if (B1.is_zero() || B2.is_zero()) return std::nullopt;
        for (const E& z : cuberoots_fn(B1 * B2.inv())) u2_candidates.push_back(z);
    } else if (B1.is_zero() && B2.is_zero()) {
        // j = 1728: u^4 = A1/A2
        if (A1.is_zero() || A2.is_zero()) return std::nullopt;
        auto rt = sqrt_fn(A1 * A2.inv());
        if (rt) {
            u2_candidates.push_back(*rt);
            u2_candidates.push_back(-*rt);
        }
    } else {
        return std::nullopt; // distinct j-invariants
    }
    for (const E& u2 : u2_candidates) {
        if (u2.is_zero()) continue;
        if (!(u2 * u2 * A2 == A1)) continue;             // u^4 A2 = A1
        if (!(u2 * u2 * u2 * B2 == B1)) continue;        // u^6 B2 = B1
        auto u = sqrt_fn(u2);
        if (!u || u->is_zero()) continue;
        WIso<E> scale{*u, u->zero(), u->zero(), u->zero()};
        WIso<E> full = w1.then(scale).then(w2.inverse());
        if (transform_curve(C1, full) == C2) return full;
    }
    return std::nullopt;
}

} // namespace tlab
