#pragma once

#include <optional>

#include "core/ellcurve.hpp"
#include "core/numberfield.hpp"

namespace tlab {

// Reductions and base changes between the curve coefficient domains.

inline std::optional<ECurve<Fp64>> reduce_curve(const ECurve<Rational>& C, std::uint64_t p) {
    Integer P(static_cast<unsigned long long>(p));
    for (const Rational* c : {&C.a1, &C.a2, &C.a3, &C.a4, &C.a6})
        if (c->den().fmod(P).is_zero()) return std::nullopt;
    auto f = [p](const Rational& c) { return Fp64::from_rational(c, p); };
    try {
        return ECurve<Fp64>(f(C.a1), f(C.a2), f(C.a3), f(C.a4), f(C.a6));
    } catch (const input_error&) {
        return std::nullopt; // singular reduction
    }
}

inline std::optional<ECurve<Fq64>> reduce_curve(const ECurve<NFElem>& C, const PrimeSlot& slot) {
    try {
        return ECurve<Fq64>(reduce_nf(C.a1, slot), reduce_nf(C.a2, slot), reduce_nf(C.a3, slot),
                            reduce_nf(C.a4, slot), reduce_nf(C.a6, slot));
    } catch (const input_error&) {
        return std::nullopt; // bad denominator or singular reduction
    }
}

inline std::optional<ECurve<Fp64>> reduce_curve_fp(const ECurve<NFElem>& C, const PrimeSlot& slot) {
    try {
        return ECurve<Fp64>(reduce_nf_fp(C.a1, slot), reduce_nf_fp(C.a2, slot), reduce_nf_fp(C.a3, slot),
                            reduce_nf_fp(C.a4, slot), reduce_nf_fp(C.a6, slot));
    } catch (const input_error&) {
        return std::nullopt;
    }
}

inline std::optional<EPoint<Fq64>> reduce_point(const EPoint<NFElem>& P, const PrimeSlot& slot) {
    if (P.inf) return EPoint<Fq64>::infinity(Fq64::scalar(slot.residue_field, 0));
    try {
        return EPoint<Fq64>::affine(reduce_nf(P.x, slot), reduce_nf(P.y, slot));
    } catch (const input_error&) {
        return std::nullopt; // the point meets the zero section at this prime
    }
}

inline ECurve<NFElem> base_change(const ECurve<Rational>& C, const NumberField& K) {
    auto f = [&](const Rational& c) { return NFElem::from_rational(K, c); };
    return ECurve<NFElem>(f(C.a1), f(C.a2), f(C.a3), f(C.a4), f(C.a6));
}

inline EPoint<NFElem> base_change(const EPoint<Rational>& P, const NumberField& K) {
    if (P.inf) return EPoint<NFElem>::infinity(NFElem::from_rational(K, Rational(0)));
    return EPoint<NFElem>::affine(NFElem::from_rational(K, P.x), NFElem::from_rational(K, P.y));
}

inline ECurve<NFElem> galois_apply(const FieldAutomorphism& s, const ECurve<NFElem>& C) {
    return ECurve<NFElem>(s(C.a1), s(C.a2), s(C.a3), s(C.a4), s(C.a6));
}

inline EPoint<NFElem> galois_apply(const FieldAutomorphism& s, const EPoint<NFElem>& P) {
    if (P.inf) return P;
    return EPoint<NFElem>::affine(s(P.x), s(P.y));
}

} // namespace tlab
