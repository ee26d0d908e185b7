#pragma once

#include <algorithm>
#include <vector>

#include "core/common.hpp"
#include "core/fp64.hpp"
#include "core/fq.hpp"
#include "core/poly.hpp"
#include "core/primes.hpp"

namespace tlab {

inline Integer field_card(const Fp64& e) { return Integer(static_cast<unsigned long long>(e.modulus())); }
inline Integer field_card(const Fq64& e) { return e.ctx()->q; }
inline std::uint64_t field_char(const Fp64& e) { return e.modulus(); }
inline std::uint64_t field_char(const Fq64& e) { return e.ctx()->p; }

namespace detail {

template <class E>
UniPoly<E> random_poly_below(const E& proto, long deg_bound, Rng& rng, std::uint64_t card_hint) {
    std::vector<E> c;
    c.reserve(static_cast<std::size_t>(deg_bound));
    for (long i = 0; i < deg_bound; ++i)
        c.push_back(proto.from_long(static_cast<long>(rng.below(card_hint))));
    return UniPoly<E>(proto, std::move(c));
}

// For extension fields, from_long only reaches the prime subfield, so mix in
// powers of the generator.
inline UniPoly<Fq64> random_poly_below(const Fq64& proto, long deg_bound, Rng& rng, std::uint64_t) {
    std::vector<Fq64> c;
    c.reserve(static_cast<std::size_t>(deg_bound));
    std::uint64_t p = proto.ctx()->p;
    for (long i = 0; i < deg_bound; ++i) {
        std::vector<std::uint64_t> coords(proto.ctx()->d);
        for (auto& x : coords) x = rng.below(p);
        c.emplace_back(proto.ctx(), std::move(coords));
    }
    return UniPoly<Fq64>(proto, std::move(c));
}

} // namespace detail

// Equal-degree splitting (Cantor-Zassenhaus) of a squarefree monic f that is
// a product of irreducibles all of degree k.  Odd characteristic only.
template <class E>
void equal_degree_split(const UniPoly<E>& f, long k, std::vector<UniPoly<E>>& out, Rng& rng) {
    if (f.degree() == k) {
        out.push_back(f);
        return;
    }
    const E proto = f.proto();
    Integer q = field_card(proto);
    if (!(q.fmod(Integer(2)).is_one())) throw internal_error("equal_degree_split: even characteristic");
    Integer e = (Integer::pow(q, static_cast<unsigned long>(k)) - Integer(1)) / Integer(2);
    while (true) {
        auto r = detail::random_poly_below(proto, f.degree(), rng, std::max<std::uint64_t>(2, field_char(proto)));
        if (r.degree() < 1) continue;
        auto g = poly_gcd(r, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, k, out, rng);
            equal_degree_split(exact_div(f, g), k, out, rng);
            return;
        }
        auto h = powmod(r, e, f) - UniPoly<E>::constant(proto.one());
        g = poly_gcd(h, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, k, out, rng);
            equal_degree_split(exact_div(f, g), k, out, rng);
            return;
        }
    }
}

namespace detail {

// x |-> x^p has inverse a |-> a^(q/p) on F_q.
template <class E>
UniPoly<E> pth_root_poly(const UniPoly<E>& f) {
    const E proto = f.proto();
    const std::uint64_t p = field_char(proto);
    Integer e = field_card(proto) / Integer(static_cast<unsigned long long>(p));
    std::vector<E> cc;
    for (long i = 0; i <= f.degree(); i += static_cast<long>(p)) {
        E a = f.coeff(static_cast<std::size_t>(i));
        E r = proto.one(), b = a;
        Integer k = e;
        while (k.sign() > 0) {
            if (k.odd()) r = r * b;
            b = b * b;
            k = k / Integer(2);
        }
        cc.push_back(r);
    }
    return UniPoly<E>(proto, std::move(cc));
}

// Squarefree decomposition of a monic f over F_q (multiplicity, part) pairs.
template <class E>
void squarefree_decompose_mod_q(const UniPoly<E>& f, unsigned outer_mult,
                                std::vector<std::pair<UniPoly<E>, unsigned>>& parts) {
    if (f.degree() <= 0) return;
    const std::uint64_t p = field_char(f.proto());
    auto df = f.derivative();
    if (df.is_zero()) {
        squarefree_decompose_mod_q(pth_root_poly(f), outer_mult * static_cast<unsigned>(p), parts);
        return;
    }
    auto c = poly_gcd(f, df);
    auto w = exact_div(f, c);
    unsigned i = 1;
    while (w.degree() > 0) {
        auto y = poly_gcd(w, c);
        auto piece = exact_div(w, y);
        if (piece.degree() > 0) parts.emplace_back(piece, i * outer_mult);
        c = exact_div(c, y);
        w = std::move(y);
        ++i;
    }
    if (c.degree() > 0) squarefree_decompose_mod_q(pth_root_poly(c), outer_mult * static_cast<unsigned>(p), parts);
}

} // namespace detail

// Complete factorization over a finite field: returns monic irreducible
// factors with multiplicities, deterministically ordered.
template <class E>
std::vector<std::pair<UniPoly<E>, unsigned>> factor_mod_q(const UniPoly<E>& f_in) {
    if (f_in.is_zero()) throw input_error("factor_mod_q: zero polynomial");
    const E proto = f_in.proto();
    std::vector<std::pair<UniPoly<E>, unsigned>> out;
    std::vector<std::pair<UniPoly<E>, unsigned>> squarefree_parts;
    detail::squarefree_decompose_mod_q(monic(f_in), 1, squarefree_parts);

    Rng rng(0x5eedf00d1234ULL);
    for (auto& [sf, mult] : squarefree_parts) {
        // distinct-degree, then equal-degree
        UniPoly<E> f = sf;
        UniPoly<E> x = UniPoly<E>::x(proto);
        UniPoly<E> h = x;
        Integer q = field_card(proto);
        for (long k = 1; f.degree() > 0 && 2 * k <= f.degree(); ++k) {
            h = powmod(h, q, f);
            auto g = poly_gcd(h - x, f);
            if (g.degree() > 0) {
                std::vector<UniPoly<E>> pieces;
                equal_degree_split(g, k, pieces, rng);
                for (auto& piece : pieces) out.emplace_back(piece, mult);
                f = exact_div(f, g);
                h = h % f;
            }
        }
        if (f.degree() > 0) out.emplace_back(f, mult);
    }

    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (long i = a.first.degree(); i >= 0; --i) {
            auto sa = a.first.coeff(static_cast<std::size_t>(i)).to_string();
            auto sb = b.first.coeff(static_cast<std::size_t>(i)).to_string();
            if (sa != sb) return sa < sb;
        }
        return false;
    });
    return out;
}

template <class E>
bool is_irreducible_mod_p(const UniPoly<E>& f) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    const E proto = f.proto();
    Integer q = field_card(proto);
    UniPoly<E> x = UniPoly<E>::x(proto);
    // x^(q^n) == x mod f, and gcd(x^(q^(n/l)) - x, f) == 1 for prime l | n
    UniPoly<E> h = x;
    long n = f.degree();
    for (long i = 0; i < n; ++i) h = powmod(h, q, f);
    if (!(h % f == x % f)) return false;
    for (long l = 2; l <= n; ++l) {
        if (n % l != 0 || !is_prime_u64(static_cast<std::uint64_t>(l))) continue;
        UniPoly<E> hk = x;
        for (long i = 0; i < n / l; ++i) hk = powmod(hk, q, f);
        if (poly_gcd(hk - x, f).degree() != 0) return false;
    }
    return true;
}

// Roots of f in the coefficient field, each listed once, sorted by index.
template <class E>
std::vector<E> roots_mod_q(const UniPoly<E>& f) {
    std::vector<E> roots;
    if (f.degree() <= 0) return roots;
    const E proto = f.proto();
    Integer q = field_card(proto);
    UniPoly<E> x = UniPoly<E>::x(proto);
    auto xq = powmod(x, q, f);
    auto lin = poly_gcd(xq - x, f);
    if (lin.degree() <= 0) return roots;
    std::vector<UniPoly<E>> pieces;
    if (lin.degree() == 1) {
        pieces.push_back(lin);
    } else if (field_char(proto) == 2) {
        // tiny even-characteristic fields: direct scan
        for (Integer i(0); i < q; i += Integer(1)) {
            E a = proto;
            if constexpr (std::is_same_v<E, Fq64>) a = Fq64::from_index(a.ctx(), i.to_u64());
            else a = proto.from_long(i.to_long());
            if (f.eval(a).is_zero()) roots.push_back(a);
        }
        return roots;
    } else {
        Rng rng(0x700757edULL);
        equal_degree_split(lin, 1, pieces, rng);
    }
    for (auto& piece : pieces) roots.push_back(-piece.coeff(0) * piece.coeff(1).inv());
    std::sort(roots.begin(), roots.end(), [](const E& a, const E& b) { return a.to_string() < b.to_string(); });
    return roots;
}

} // namespace tlab
