#include "core/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "core/fieldops.hpp"
#include "core/polyfactor_fp.hpp"
#include "core/primes.hpp"

namespace tlab {

namespace {

// number of y with y^2 + b y + c = 0
template <class E>
unsigned quadratic_root_count(const E& b, const E& c) {
    if (field_char(b) == 2) {
        if (b.is_zero()) return 1; // squaring is bijective
        // substitute y = b z: z^2 + z = c / b^2, solvable iff absolute trace is 0
        E v = c * (b * b).inv();
        if constexpr (std::is_same_v<E, Fq64>) {
            return v.trace().is_zero() ? 2 : 0;
        } else {
            return v.is_zero() ? 2 : 0; // F_2: z^2 + z = v has roots iff v = 0
        }
    }
    E d = b * b - b.from_long(4) * c;
    if (d.is_zero()) return 1;
    if constexpr (std::is_same_v<E, Fq64>) {
        return d.chi() == 1 ? 2 : 0;
    } else {
        return d.legendre() == 1 ? 2 : 0;
    }
}

template <class E, class Iter>
std::uint64_t count_enum_impl(const ECurve<E>& C, std::uint64_t q, Iter elem) {
    std::uint64_t total = 1; // infinity
    for (std::uint64_t i = 0; i < q; ++i) {
        E x = elem(i);
        E b = C.a1 * x + C.a3;
        E c = -C.rhs_cubic(x);
        total += quadratic_root_count(b, c);
    }
    return total;
}

std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// All m in [lo, hi] with m*P = infinity, by BSGS over the interval.
template <class E>
std::vector<std::uint64_t> multiples_killing(const ECurve<E>& C, const EPoint<E>& P,
                                             std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> matches;
    const std::uint64_t width = hi - lo + 1;
    const std::uint64_t s = std::max<std::uint64_t>(1, isqrt_u64(width) + 1);

    std::map<std::string, std::uint64_t> baby; // x-coordinate key -> smallest j
    std::vector<EPoint<E>> jP(s, EPoint<E>::infinity(C.proto()));
    for (std::uint64_t j = 1; j < s; ++j) {
        jP[j] = C.add(jP[j - 1], P);
        if (!jP[j].inf) {
            auto key = jP[j].x.to_string();
            if (!baby.count(key)) baby[key] = j;
        }
    }
    EPoint<E> giant = C.mul(Integer(static_cast<unsigned long long>(s)), P);
    EPoint<E> R = C.mul(Integer(static_cast<unsigned long long>(lo)), P);
    for (std::uint64_t g = 0;; ++g) {
        std::uint64_t base = lo + g * s;
        if (base > hi) break;
        if (R.inf) {
            matches.push_back(base);
        } else {
            auto it = baby.find(R.x.to_string());
            if (it != baby.end()) {
                // R == ±jP possibly for several j with same x; scan the hits
                for (std::uint64_t j = it->second; j < s; ++j) {
                    if (jP[j].inf || !(jP[j].x == R.x)) continue;
                    if (C.neg(jP[j]) == R && base + j <= hi) matches.push_back(base + j);
                    if (jP[j] == R && base >= j + lo && base - j >= lo) matches.push_back(base - j);
                }
            }
        }
        R = C.add(R, giant);
    }
    std::sort(matches.begin(), matches.end());
    matches.erase(std::unique(matches.begin(), matches.end()), matches.end());
    return matches;
}

// exact order of P given the list of interval multiples
template <class E>
std::uint64_t order_from_matches(const ECurve<E>& C, const EPoint<E>& P,
                                 const std::vector<std::uint64_t>& matches) {
    if (matches.empty()) throw internal_error("order_from_matches: no multiple found");
    std::uint64_t g = 0;
    for (std::size_t i = 0; i < matches.size(); ++i) {
        g = std::gcd(g, matches[i]);
        for (std::size_t j = i + 1; j < matches.size(); ++j) g = std::gcd(g, matches[j] - matches[i]);
    }
    // strip primes while the multiple still kills P
    for (auto [p, e] : factor_u64(g)) {
        for (unsigned i = 0; i < e; ++i) {
            std::uint64_t cand = g / p;
            if (C.mul(Integer(static_cast<unsigned long long>(cand)), P).inf) g = cand;
            else break;
        }
    }
    return g;
}

template <class E, class RandOn, class RandTw>
std::uint64_t bsgs_order_lcm(const ECurve<E>& C, const ECurve<E>& twist, std::uint64_t q,
                             RandOn rand_on, RandTw rand_tw) {
    const std::uint64_t t0 = 2 * isqrt_u64(q) + 2;
    const std::uint64_t lo = q + 1 > t0 ? q + 1 - t0 : 1, hi = q + 1 + t0;
    std::uint64_t L = 1, Lt = 1;
    auto candidates = [&](std::uint64_t div, bool twisted) {
        std::vector<std::uint64_t> out;
        std::uint64_t start = ((lo + div - 1) / div) * div;
        for (std::uint64_t m = start; m <= hi; m += div) out.push_back(twisted ? 2 * (q + 1) - m : m);
        std::sort(out.begin(), out.end());
        return out;
    };
    for (int round = 0; round < 64; ++round) {
        bool use_twist = round % 2 == 1;
        const ECurve<E>& cur = use_twist ? twist : C;
        EPoint<E> P = use_twist ? rand_tw() : rand_on();
        auto matches = multiples_killing(cur, P, lo, hi);
        std::uint64_t ord = order_from_matches(cur, P, matches);
        (use_twist ? Lt : L) = std::lcm(use_twist ? Lt : L, ord);
        auto ce = candidates(L, false);
        auto ct = candidates(Lt, true);
        std::vector<std::uint64_t> inter;
        std::set_intersection(ce.begin(), ce.end(), ct.begin(), ct.end(), std::back_inserter(inter));
        if (inter.size() == 1) return inter[0];
        if (inter.empty()) throw internal_error("bsgs: empty candidate intersection");
    }
    throw internal_error("bsgs: order not pinned after 64 rounds");
}

EPoint<Fp64> random_point_fp(const ECurve<Fp64>& C, Rng& rng) {
    const std::uint64_t p = C.proto().modulus();
    while (true) {
        Fp64 x(rng.below(p), p);
        auto ys = C.lift_x(x, sqrt_hook<Fp64>());
        if (!ys.empty()) return EPoint<Fp64>::affine(x, ys[rng.next() & 1 ? 0 : ys.size() - 1]);
    }
}

EPoint<Fq64> random_point_fq(const ECurve<Fq64>& C, Rng& rng) {
    auto F = C.proto().ctx();
    const std::uint64_t q = F->q.to_u64();
    while (true) {
        Fq64 x = Fq64::from_index(F, rng.below(q));
        auto ys = C.lift_x(x, sqrt_hook<Fq64>());
        if (!ys.empty()) return EPoint<Fq64>::affine(x, ys[rng.next() & 1 ? 0 : ys.size() - 1]);
    }
}

} // namespace

std::uint64_t count_elliptic_enum(const ECurve<Fp64>& C) {
    const std::uint64_t p = C.proto().modulus();
    if (p > 2000000) throw input_error("count_elliptic_enum: field too large");
    return count_enum_impl(C, p, [&](std::uint64_t i) { return Fp64(i, p); });
}

std::uint64_t count_elliptic_enum(const ECurve<Fq64>& C) {
    auto F = C.proto().ctx();
    if (F->q > Integer(2000000)) throw input_error("count_elliptic_enum: field too large");
    const std::uint64_t q = F->q.to_u64();
    return count_enum_impl(C, q, [&](std::uint64_t i) { return Fq64::from_index(F, i); });
}

std::uint64_t count_elliptic_bsgs(const ECurve<Fp64>& C) {
    const std::uint64_t p = C.proto().modulus();
    if (p <= 457) return count_elliptic_enum(C);
    // short form and its twist by a non-residue
    auto [S, iso] = short_form(C);
    (void)iso;
    Fp64 c(0, p);
    for (std::uint64_t v = 2;; ++v) {
        c = Fp64(v, p);
        if (c.legendre() == -1) break;
    }
    ECurve<Fp64> T(Fp64(0, p), Fp64(0, p), Fp64(0, p), S.a4 * c * c, S.a6 * c * c * c);
    Rng rng(0xb595c0de ^ p);
    return bsgs_order_lcm(
        S, T, p, [&]() { return random_point_fp(S, rng); }, [&]() { return random_point_fp(T, rng); });
}

std::uint64_t count_points(const ECurve<Fp64>& C) {
    const std::uint64_t p = C.proto().modulus();
    if (p <= 4096) return count_elliptic_enum(C);
    return count_elliptic_bsgs(C);
}

std::uint64_t count_points(const ECurve<Fq64>& C) {
    auto F = C.proto().ctx();
    if (F->d == 1) {
        Fp64 pr(0, F->p);
        auto conv = [&](const Fq64& e) {
            std::uint64_t root = (F->p - F->g[0] % F->p) % F->p;
            Fp64 acc(0, F->p);
            Fp64 w(root, F->p);
            for (unsigned i = F->d; i-- > 0;) acc = acc * w + Fp64(e.coords()[i], F->p);
            return acc;
        };
        ECurve<Fp64> Cp(conv(C.a1), conv(C.a2), conv(C.a3), conv(C.a4), conv(C.a6));
        return count_points(Cp);
    }
    if (F->q <= Integer(65536)) return count_elliptic_enum(C);
    if (F->p == 2) throw input_error("count_points: large even characteristic unsupported");
    const std::uint64_t q = F->q.to_u64();
    // twist by a non-residue of F_q (odd characteristic)
    auto [S, iso] = short_form(C);
    (void)iso;
    Fq64 c = S.proto();
    for (std::uint64_t idx = 2;; ++idx) {
        c = Fq64::from_index(F, idx);
        if (!c.is_zero() && c.chi() == -1) break;
    }
    ECurve<Fq64> T(S.proto().zero(), S.proto().zero(), S.proto().zero(), S.a4 * c * c, S.a6 * c * c * c);
    Rng rng(0xfeedba5e ^ q);
    return bsgs_order_lcm(
        S, T, q, [&]() { return random_point_fq(S, rng); }, [&]() { return random_point_fq(T, rng); });
}

namespace {

// #E[l^a](F_q) check: counts rational x-roots of the primitive l^j-division
// polynomials together with y-rationality.
template <class E>
std::uint64_t torsion_subgroup_size(const ECurve<E>& C, std::uint64_t ell, unsigned a,
                                    const std::function<std::optional<E>(const E&)>& sqrt_fn) {
    std::uint64_t size = 1;
    for (unsigned j = 1; j <= a; ++j) {
        std::uint64_t n = 1;
        for (unsigned i = 0; i < j; ++i) n *= ell;
        auto prim = division_poly_primitive(C, static_cast<unsigned>(n));
        std::uint64_t pts = 0;
        for (const E& x : roots_mod_q(prim)) {
            E b = C.a1 * x + C.a3;
            E cc = -C.rhs_cubic(x);
            // roots with rational y: 1 or 2 points each
            E d = b * b - b.from_long(4) * cc;
            if (d.is_zero()) pts += 1;
            else if (sqrt_fn(d)) pts += 2;
        }
        size += pts;
    }
    return size;
}

template <class E, class RandPoint>
std::pair<std::uint64_t, std::uint64_t> group_structure_impl(const ECurve<E>& C, std::uint64_t N,
                                                             const Integer& qm1, RandPoint rand_pt) {
    auto nfac = factor_u64(N);
    auto order_of = [&](const EPoint<E>& P) {
        std::uint64_t d = N;
        for (auto [p, e] : nfac) {
            for (unsigned i = 0; i < e; ++i) {
                std::uint64_t cand = d / p;
                if (d % p == 0 && C.mul(Integer(static_cast<unsigned long long>(cand)), P).inf) d = cand;
                else break;
            }
        }
        return d;
    };
    std::uint64_t lambda = 1;
    auto verified = [&](std::uint64_t lam) -> bool {
        if (lam == 0 || N % lam != 0) return false;
        std::uint64_t m = N / lam;
        if (lam % m != 0) return false;
        if (!qm1.fmod(Integer(static_cast<unsigned long long>(m))).is_zero()) return false;
        for (auto [p, e] : factor_u64(m)) {
            std::uint64_t expect = 1;
            for (unsigned i = 0; i < 2 * e; ++i) expect *= p;
            if (torsion_subgroup_size(C, p, e, sqrt_hook<E>()) != expect) return false;
        }
        return true;
    };
    for (int i = 0; i < 512; ++i) {
        lambda = std::lcm(lambda, order_of(rand_pt()));
        if (lambda == N) break;
        if (i >= 15 && i % 16 == 15 && verified(lambda)) return {N / lambda, lambda};
    }
    if (!verified(lambda)) throw internal_error("group_structure: could not pin invariant factors");
    return {N / lambda, lambda};
}

} // namespace

std::pair<std::uint64_t, std::uint64_t> group_structure(const ECurve<Fp64>& C) {
    const std::uint64_t p = C.proto().modulus();
    std::uint64_t N = count_points(C);
    Rng rng(0x57a7e ^ p);
    return group_structure_impl(C, N, Integer(static_cast<unsigned long long>(p - 1)),
                                [&]() { return random_point_fp(C, rng); });
}

std::pair<std::uint64_t, std::uint64_t> group_structure(const ECurve<Fq64>& C) {
    auto F = C.proto().ctx();
    std::uint64_t N = count_points(C);
    Rng rng(0x57a7e ^ F->p);
    return group_structure_impl(C, N, F->q - Integer(1), [&]() { return random_point_fq(C, rng); });
}

namespace {

UniPoly<Fq64> to_fq_poly(const QPoly& f, const std::shared_ptr<const FqCtx>& F) {
    return f.map_coeffs(Fq64::scalar(F, 0), [&](const Rational& c) {
        return Fq64::from_fp(F, Fp64::from_rational(c, F->p));
    });
}

} // namespace

CountResult count_genus2(const PlaneModel& model, std::uint64_t q, unsigned k) {
    if (!is_prime_u64(q)) throw input_error("count_genus2: q must be prime");
    Integer qk = Integer::pow(Integer(static_cast<unsigned long long>(q)), k);
    if (qk > Integer(1000000)) throw input_error("count_genus2: field too large");
    auto F = FqCtx::extension(q, k);
    auto qp = to_fq_poly(model.qpoly, F);
    auto rp = to_fq_poly(model.rpoly, F);
    CountResult res{q, k, 0, 0, 0};
    const std::uint64_t size = qk.to_u64();
    for (std::uint64_t i = 0; i < size; ++i) {
        Fq64 u = Fq64::from_index(F, i);
        res.affine += quadratic_root_count(-qp.eval(u), rp.eval(u));
    }
    // points at infinity: U = 0 on the second chart (u = 1/U, v = V/U^3)
    Fq64 qinf = Fq64::from_fp(F, Fp64::from_rational(model.qpoly.coeff(3), F->p));
    Fq64 rinf = Fq64::from_fp(F, Fp64::from_rational(model.rpoly.coeff(6), F->p));
    res.at_infinity = quadratic_root_count(-qinf, rinf);
    res.count = res.affine + res.at_infinity;
    return res;
}

CountResult count_genus2_hyperelliptic(const PlaneModel& model, std::uint64_t q, unsigned k) {
    if (q == 2) throw input_error("hyperelliptic form needs odd characteristic");
    Integer qk = Integer::pow(Integer(static_cast<unsigned long long>(q)), k);
    if (qk > Integer(1000000)) throw input_error("count too large");
    auto F = FqCtx::extension(q, k);
    QPoly f = model.qpoly * model.qpoly - model.rpoly.scaled(Rational(4));
    auto fp = to_fq_poly(f, F);
    CountResult res{q, k, 0, 0, 0};
    const std::uint64_t size = qk.to_u64();
    for (std::uint64_t i = 0; i < size; ++i) {
        Fq64 u = Fq64::from_index(F, i);
        Fq64 v = fp.eval(u);
        if (v.is_zero()) res.affine += 1;
        else res.affine += v.chi() == 1 ? 2 : 0;
    }
    Fq64 lc = Fq64::from_fp(F, Fp64::from_rational(f.coeff(6), F->p));
    res.at_infinity = lc.is_zero() ? 1 : (lc.chi() == 1 ? 2 : 0);
    res.count = res.affine + res.at_infinity;
    return res;
}

Integer ZetaNumerator::at1() const {
    Integer s(0);
    for (const auto& c : coeffs) s += c;
    return s;
}

ZetaNumerator zeta_numerator_genus2(std::uint64_t n1, std::uint64_t n2, std::uint64_t q) {
    Integer Q(static_cast<unsigned long long>(q));
    Integer s1 = Q + Integer(1) - Integer(static_cast<unsigned long long>(n1));
    Integer s2 = Q * Q + Integer(1) - Integer(static_cast<unsigned long long>(n2));
    // Weil bounds: |s1| <= 4 sqrt(q), |s2| <= 4 q
    if (s1 * s1 > Integer(16) * Q || s2.abs() > Integer(4) * Q)
        throw input_error("zeta_numerator_genus2: counts violate the Weil bounds");
    Integer twice_a2 = s1 * s1 - s2;
    if (!twice_a2.fmod(Integer(2)).is_zero())
        throw input_error("zeta_numerator_genus2: parity violation in s1^2 - s2");
    Integer a1 = -s1;
    Integer a2 = twice_a2 / Integer(2);
    ZetaNumerator z;
    z.q = q;
    z.coeffs = {Integer(1), a1, a2, Q * a1, Q * Q};
    return z;
}

} // namespace tlab
