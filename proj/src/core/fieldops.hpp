#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "core/fp64.hpp"
#include "core/fq.hpp"
#include "core/numberfield.hpp"
#include "core/polyfactor_fp.hpp"

namespace tlab {

// Square-root and cube-root hooks used by the generic curve algorithms.
template <class E>
std::function<std::optional<E>(const E&)> sqrt_hook() {
    return [](const E& x) { return x.sqrt(); };
}

inline std::optional<Rational> rational_cbrt(const Rational& x) {
    auto cbrt_z = [](const Integer& n) -> std::optional<Integer> {
        if (n.is_zero()) return Integer(0);
        mpz_class r;
        int exact = mpz_root(r.get_mpz_t(), n.abs().raw().get_mpz_t(), 3);
        if (!exact) return std::nullopt;
        Integer root{Integer(r)};
        return n.sign() < 0 ? -root : root;
    };
    auto a = cbrt_z(x.num());
    auto b = cbrt_z(x.den());
    if (!a || !b) return std::nullopt;
    return Rational(*a, *b);
}

template <class E>
std::function<std::vector<E>(const E&)> cuberoots_hook();

template <>
inline std::function<std::vector<Rational>(const Rational&)> cuberoots_hook<Rational>() {
    return [](const Rational& c) {
        std::vector<Rational> out;
        if (auto r = rational_cbrt(c)) out.push_back(*r);
        return out;
    };
}

template <>
inline std::function<std::vector<NFElem>(const NFElem&)> cuberoots_hook<NFElem>() {
    return [](const NFElem& c) {
        NFElem pr = c.zero();
        UniPoly<NFElem> h(pr, {-c, pr.zero(), pr.zero(), pr.one()});
        return roots_in_K(h);
    };
}

template <>
inline std::function<std::vector<Fp64>(const Fp64&)> cuberoots_hook<Fp64>() {
    return [](const Fp64& c) {
        UniPoly<Fp64> h(c.zero(), {-c, c.zero(), c.zero(), c.one()});
        return roots_mod_q(h);
    };
}

template <>
inline std::function<std::vector<Fq64>(const Fq64&)> cuberoots_hook<Fq64>() {
    return [](const Fq64& c) {
        UniPoly<Fq64> h(c.zero(), {-c, c.zero(), c.zero(), c.one()});
        return roots_mod_q(h);
    };
}

} // namespace tlab
