#include "core/qpoly.hpp"

#include <algorithm>

#include "core/polyfactor_fp.hpp"
#include "core/primes.hpp"

namespace tlab {

QPoly q_from_strings(const std::vector<std::string>& coeffs) {
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (const auto& s : coeffs) c.emplace_back(s);
    return QPoly(Rational(0), std::move(c));
}

QPoly q_from_longs(const std::vector<long>& coeffs) {
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    return QPoly(Rational(0), std::move(c));
}

std::pair<Rational, ZPoly> content_primitive(const QPoly& f) {
    if (f.is_zero()) return {Rational(0), ZPoly(Integer(0))};
    Integer den_lcm(1), num_gcd(0);
    for (const auto& c : f.coeffs()) den_lcm = Integer::lcm(den_lcm, c.den());
    std::vector<Integer> zc;
    zc.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) {
        Integer v = c.num() * den_lcm.exact_div(c.den());
        num_gcd = Integer::gcd(num_gcd, v);
        zc.push_back(v);
    }
    int sign = zc.back().sign();
    if (sign < 0) num_gcd = -num_gcd;
    for (auto& v : zc) v = v.exact_div(num_gcd);
    return {Rational(num_gcd, den_lcm), ZPoly(Integer(0), std::move(zc))};
}

QPoly to_qpoly(const ZPoly& f) {
    return f.map_coeffs(Rational(0), [](const Integer& c) { return Rational(c); });
}

Integer z_content(const ZPoly& f) {
    Integer g(0);
    for (const auto& c : f.coeffs()) g = Integer::gcd(g, c);
    return g;
}

UniPoly<Fp64> reduce_mod_p(const ZPoly& f, std::uint64_t p) {
    return f.map_coeffs(Fp64(0, p), [p](const Integer& c) { return Fp64::from_integer(c, p); });
}

UniPoly<Fp64> reduce_mod_p(const QPoly& f, std::uint64_t p) {
    return f.map_coeffs(Fp64(0, p), [p](const Rational& c) { return Fp64::from_rational(c, p); });
}

namespace {

ZPoly zpoly_mod(const ZPoly& f, const Integer& m) {
    return f.map_coeffs(Integer(0), [&](const Integer& c) { return c.fmod(m); });
}

ZPoly zpoly_mul_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
    return zpoly_mod(a * b, m);
}

// division by a monic b over Z/m
std::pair<ZPoly, ZPoly> zpoly_divrem_monic_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
    if (b.is_zero() || !b.lc().is_one()) throw internal_error("zpoly_divrem_monic_mod: divisor not monic");
    ZPoly q(Integer(0)), r = zpoly_mod(a, m);
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Integer c = r.lc();
        auto k = static_cast<std::size_t>(r.degree() - b.degree());
        q += ZPoly::monomial(c, k);
        r = zpoly_mod(r - b.scaled(c).shifted_up(k), m);
    }
    return {zpoly_mod(q, m), r};
}

ZPoly lift_from_fp(const UniPoly<Fp64>& f) {
    return f.map_coeffs(Integer(0), [](const Fp64& c) { return Integer(static_cast<unsigned long long>(c.value())); });
}

// One quadratic Hensel step: given f = g*h (mod m) with g monic and
// s*g + t*h = 1 (mod m), produce the same data mod m^2.
struct HenselPair {
    ZPoly g, h, s, t;
};

HenselPair hensel_step(const ZPoly& f, const HenselPair& in, const Integer& m) {
    Integer m2 = m * m;
    ZPoly e = zpoly_mod(f - in.g * in.h, m2);
    auto [q1, u] = zpoly_divrem_monic_mod(zpoly_mul_mod(e, in.t, m2), in.g, m2);
    ZPoly g2 = zpoly_mod(in.g + u, m2);
    ZPoly h2 = zpoly_mod(in.h + zpoly_mul_mod(e, in.s, m2) + zpoly_mul_mod(q1, in.h, m2), m2);
    ZPoly err = zpoly_mod(in.s * g2 + in.t * h2 - ZPoly::constant(Integer(1)), m2);
    ZPoly one_minus = zpoly_mod(ZPoly::constant(Integer(1)) - err, m2);
    auto [q2, s2] = zpoly_divrem_monic_mod(zpoly_mul_mod(in.s, one_minus, m2), h2, m2);
    ZPoly t2 = zpoly_mod(zpoly_mul_mod(in.t, one_minus, m2) + zpoly_mul_mod(q2, g2, m2), m2);
    return {g2, h2, s2, t2};
}

// Lift the monic factorization of f/lc(f) from mod p to mod p^(2^steps)
// >= target by a factor tree.
std::vector<ZPoly> hensel_lift_tree(const ZPoly& f_in, const std::vector<UniPoly<Fp64>>& modular,
                                    std::uint64_t p, const Integer& target, Integer& modulus_out) {
    Integer m(static_cast<unsigned long long>(p));
    int steps = 0;
    while (m < target) {
        m = m * m;
        ++steps;
    }
    modulus_out = m;
    // monicize f modulo p^k
    Integer s(0), t(0);
    Integer g0 = Integer::gcdext(f_in.lc().fmod(modulus_out), modulus_out, s, t);
    if (!g0.is_one()) throw internal_error("hensel: leading coefficient not invertible");
    ZPoly f = zpoly_mod(f_in.scaled(s.fmod(modulus_out)), modulus_out);
    struct Node {
        ZPoly f;
        std::size_t lo, hi;
    };
    std::vector<ZPoly> result(modular.size(), ZPoly(Integer(0)));

    std::function<void(const ZPoly&, std::size_t, std::size_t)> rec =
        [&](const ZPoly& fcur, std::size_t lo, std::size_t hi) {
            if (hi - lo == 1) {
                result[lo] = zpoly_mod(fcur, modulus_out);
                return;
            }
            std::size_t mid = lo + (hi - lo) / 2;
            Fp64 proto(0, p);
            UniPoly<Fp64> G0 = UniPoly<Fp64>::constant(proto.one());
            for (std::size_t i = lo; i < mid; ++i) G0 *= modular[i];
            UniPoly<Fp64> H0 = UniPoly<Fp64>::constant(proto.one());
            for (std::size_t i = mid; i < hi; ++i) H0 *= modular[i];
            UniPoly<Fp64> s0(proto), t0(proto);
            auto g = poly_gcdext(G0, H0, s0, t0);
            if (g.degree() != 0) throw internal_error("hensel: factors not coprime");
            HenselPair pair{lift_from_fp(G0), lift_from_fp(H0), lift_from_fp(s0), lift_from_fp(t0)};
            Integer mcur(static_cast<unsigned long long>(p));
            for (int i = 0; i < steps; ++i) {
                pair = hensel_step(zpoly_mod(fcur, mcur * mcur), pair, mcur);
                mcur = mcur * mcur;
            }
            rec(pair.g, lo, mid);
            rec(pair.h, mid, hi);
        };
    rec(zpoly_mod(f, modulus_out), 0, modular.size());
    return result;
}

Integer symmetric(const Integer& a, const Integer& m) {
    Integer r = a.fmod(m);
    if (r + r > m) r -= m;
    return r;
}

ZPoly zpoly_symmetric(const ZPoly& f, const Integer& m) {
    return f.map_coeffs(Integer(0), [&](const Integer& c) { return symmetric(c, m); });
}

// exact division test over Z; returns quotient if b | a in Z[x]
std::optional<ZPoly> z_exact_divide(const ZPoly& a, const ZPoly& b) {
    auto [q, r] = divrem(to_qpoly(a), to_qpoly(b));
    if (!r.is_zero()) return std::nullopt;
    std::vector<Integer> c;
    c.reserve(q.coeffs().size());
    for (const auto& x : q.coeffs()) {
        if (!x.is_integer()) return std::nullopt;
        c.push_back(x.num());
    }
    return ZPoly(Integer(0), std::move(c));
}

// Zassenhaus recombination + factorization of a primitive squarefree f.
std::vector<ZPoly> factor_squarefree_primitive(ZPoly f) {
    std::vector<ZPoly> out;
    if (f.degree() == 1) {
        out.push_back(f);
        return out;
    }

    // prime selection: smallest handful of good primes, keep the one with the
    // fewest modular factors
    std::vector<std::pair<UniPoly<Fp64>, unsigned>> best_factors;
    std::uint64_t best_p = 0;
    int tried = 0;
    for (std::uint64_t p = 3; tried < 4; p += 2) {
        if (!is_prime_u64(p)) continue;
        if (f.lc().divisible_by(Integer(static_cast<unsigned long long>(p)))) continue;
        auto fp = reduce_mod_p(f, p);
        if (poly_gcd(fp, fp.derivative()).degree() != 0) continue;
        auto fac = factor_mod_q(monic(fp));
        ++tried;
        if (best_p == 0 || fac.size() < best_factors.size()) {
            best_p = p;
            best_factors = std::move(fac);
        }
        if (best_factors.size() == 1) break;
    }
    if (best_p == 0) throw internal_error("factor: no good prime found");
    if (best_factors.size() == 1) {
        out.push_back(f);
        return out;
    }

    // coefficient bound: factors of f have sup-norm <= 2^n * |f|_2; include
    // the leading coefficient for the non-monic reconstruction
    Integer norm2_sq(0);
    for (const auto& c : f.coeffs()) norm2_sq += c * c;
    Integer bound = (norm2_sq.isqrt() + Integer(1)) * Integer::pow(Integer(2), static_cast<unsigned long>(f.degree() + 1)) * f.lc().abs();
    Integer target = bound * Integer(2) + Integer(1);

    std::vector<UniPoly<Fp64>> modular;
    modular.reserve(best_factors.size());
    for (auto& [g, m] : best_factors) {
        if (m != 1) throw internal_error("factor: prime not squarefree");
        modular.push_back(g);
    }
    Integer pk(0);
    std::vector<ZPoly> lifted = hensel_lift_tree(f, modular, best_p, target, pk);

    std::vector<bool> used(lifted.size(), false);
    std::size_t remaining = lifted.size();
    auto lc_mult = [&](const std::vector<std::size_t>& idx) {
        ZPoly prod = ZPoly::constant(f.lc());
        for (auto i : idx) prod = zpoly_mod(prod * lifted[i], pk);
        return zpoly_symmetric(prod, pk);
    };

    // subsets in increasing cardinality; a found factor restarts the scan
    for (std::size_t take = 1; take <= remaining && remaining > 0; ++take) {
        bool restart = true;
        while (restart && take <= remaining) {
            restart = false;
            std::vector<std::size_t> avail;
            for (std::size_t i = 0; i < lifted.size(); ++i)
                if (!used[i]) avail.push_back(i);
            if (take > avail.size()) break;
            if (take == avail.size()) break; // leftover handled after loop
            std::vector<std::size_t> sel(take);
            std::function<bool(std::size_t, std::size_t)> combo = [&](std::size_t start, std::size_t k) -> bool {
                if (k == take) {
                    std::vector<std::size_t> idx;
                    for (std::size_t j = 0; j < take; ++j) idx.push_back(avail[sel[j]]);
                    ZPoly cand = lc_mult(idx);
                    auto [cc, cp] = content_primitive(to_qpoly(cand));
                    (void)cc;
                    auto quot = z_exact_divide(f, cp);
                    if (quot) {
                        out.push_back(cp);
                        f = *quot;
                        for (auto i : idx) used[i] = true;
                        remaining -= take;
                        return true;
                    }
                    return false;
                }
                for (std::size_t i = start; i + (take - k) <= avail.size(); ++i) {
                    sel[k] = i;
                    if (combo(i + 1, k + 1)) return true;
                }
                return false;
            };
            if (combo(0, 0)) restart = true;
        }
    }
    if (f.degree() > 0) out.push_back(f);
    return out;
}

} // namespace

QFactorization factor_rational_poly(const QPoly& f) {
    if (f.is_zero()) throw input_error("factor of zero polynomial");
    QFactorization r;
    auto [content, prim] = content_primitive(f);
    r.content = content;
    if (prim.degree() == 0) return r;

    // Yun squarefree decomposition over Q (characteristic zero)
    QPoly g = to_qpoly(prim);
    QPoly d = g.derivative();
    QPoly a = poly_gcd(g, d);
    QPoly w = exact_div(g, a);
    QPoly y = exact_div(d, a);
    unsigned mult = 1;
    while (w.degree() > 0) {
        QPoly z = y - w.derivative();
        QPoly h = poly_gcd(w, z);
        if (h.degree() > 0) {
            auto [hc, hp] = content_primitive(h);
            (void)hc;
            for (auto& fac : factor_squarefree_primitive(hp))
                r.factors.emplace_back(fac, mult);
        }
        w = exact_div(w, h);
        y = exact_div(z, h);
        ++mult;
    }

    std::sort(r.factors.begin(), r.factors.end(), [](const auto& x, const auto& yy) {
        if (x.first.degree() != yy.first.degree()) return x.first.degree() < yy.first.degree();
        for (long i = x.first.degree(); i >= 0; --i) {
            const Integer& ca = x.first.coeff(static_cast<std::size_t>(i));
            const Integer& cb = yy.first.coeff(static_cast<std::size_t>(i));
            if (ca != cb) return ca < cb;
        }
        return false;
    });

    // fold the leading rational back into content so the product identity holds
    QPoly check = QPoly::constant(r.content);
    for (auto& [fac, m] : r.factors)
        for (unsigned i = 0; i < m; ++i) check *= to_qpoly(fac);
    if (!(check == f)) {
        // factors are primitive with positive lc; adjust content sign only
        r.content = -r.content;
        check = QPoly::constant(r.content);
        for (auto& [fac, m] : r.factors)
            for (unsigned i = 0; i < m; ++i) check *= to_qpoly(fac);
        if (!(check == f)) throw internal_error("factorization self-check failed");
    }
    return r;
}

bool is_irreducible_q(const QPoly& f) {
    if (f.degree() <= 0) return false;
    auto r = factor_rational_poly(f);
    return r.factors.size() == 1 && r.factors[0].second == 1;
}

std::vector<Rational> rational_roots(const QPoly& f) {
    std::vector<Rational> roots;
    for (auto& [fac, m] : factor_rational_poly(f).factors) {
        (void)m;
        if (fac.degree() == 1)
            roots.push_back(Rational(-fac.coeff(0), fac.coeff(1)));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

namespace {
int sign_at_plus_inf(const QPoly& p) { return p.lc().sign(); }
int sign_at_minus_inf(const QPoly& p) {
    return (p.degree() % 2 == 0) ? p.lc().sign() : -p.lc().sign();
}
} // namespace

int count_real_roots(const QPoly& f) {
    if (f.degree() <= 0) return 0;
    // Sturm chain on the squarefree part
    QPoly g = exact_div(f, poly_gcd(f, f.derivative()));
    std::vector<QPoly> chain{g, g.derivative()};
    while (!chain.back().is_zero()) chain.push_back(-(chain[chain.size() - 2] % chain.back()));
    chain.pop_back();
    auto changes = [&](auto sign_fn) {
        int cnt = 0, prev = 0;
        for (const auto& p : chain) {
            if (p.is_zero()) continue;
            int s = sign_fn(p);
            if (s != 0 && prev != 0 && s != prev) ++cnt;
            if (s != 0) prev = s;
        }
        return cnt;
    };
    return changes(sign_at_minus_inf) - changes(sign_at_plus_inf);
}

bool sturm_positive_definite(const QPoly& f) {
    if (f.is_zero()) throw input_error("sturm_positive_definite of zero polynomial");
    if (f.degree() == 0) return f.coeff(0).sign() > 0;
    if (f.degree() % 2 == 1) return false;
    return f.lc().sign() > 0 && f.coeff(0).sign() > 0 && count_real_roots(f) == 0;
}

Rational resultant_q(const QPoly& a, const QPoly& b) { return resultant(a, b); }

Rational discriminant_q(const QPoly& f) {
    if (f.degree() < 1) throw input_error("discriminant needs degree >= 1");
    Rational res = resultant_q(f, f.derivative());
    Rational d = res / f.lc();
    long n = f.degree();
    // disc = (-1)^(n(n-1)/2) Res(f, f') / lc(f)
    if (((n * (n - 1)) / 2) % 2 == 1) d = -d;
    return d;
}

} // namespace tlab
