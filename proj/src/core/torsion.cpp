#include "core/torsion.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "core/fieldops.hpp"
#include "core/primes.hpp"
#include "core/zeta.hpp"

namespace tlab {

namespace {

bool curve_integral_at(const ECurve<NFElem>& C, std::uint64_t p) {
    Integer P(static_cast<unsigned long long>(p));
    for (const NFElem* a : {&C.a1, &C.a2, &C.a3, &C.a4, &C.a6})
        for (const auto& c : a->coords())
            if (c.den().fmod(P).is_zero()) return false;
    return true;
}

std::optional<WitnessPrime> try_witness(const ECurve<NFElem>& C, const PrimeSlot& slot) {
    if (slot.degree == 1) {
        auto Cp = reduce_curve_fp(C, slot);
        if (!Cp) return std::nullopt;
        WitnessPrime w;
        w.slot = slot;
        w.count = count_points(*Cp);
        w.count_method = slot.p <= 4096 ? "enumeration" : "bsgs";
        return w;
    }
    auto Cq = reduce_curve(C, slot);
    if (!Cq) return std::nullopt;
    Integer q = slot.residue_field->q;
    if (q > Integer(65536) && slot.p == 2) return std::nullopt;
    WitnessPrime w;
    w.slot = slot;
    w.count = count_points(*Cq);
    w.count_method = q <= Integer(65536) ? "enumeration" : "bsgs";
    return w;
}

void fill_structure(const ECurve<NFElem>& C, WitnessPrime& w) {
    if (w.m_i != 0) return;
    if (w.slot.degree == 1) {
        auto Cp = reduce_curve_fp(C, w.slot);
        auto [m, n] = group_structure(*Cp);
        w.m_i = m;
        w.n_i = n;
    } else {
        auto Cq = reduce_curve(C, w.slot);
        auto [m, n] = group_structure(*Cq);
        w.m_i = m;
        w.n_i = n;
    }
}

} // namespace

TorsionBound torsion_bound(const ECurve<NFElem>& C, unsigned witnesses, std::uint64_t avoid_divisor) {
    const NumberField& K = C.a1.field();
    TorsionBound out;
    out.bound = Integer(0);
    auto consider = [&](std::uint64_t p, bool allow_higher_degree) {
        if (p == 2 || (avoid_divisor % p == 0)) return;
        if (!curve_integral_at(C, p)) return;
        std::vector<PrimeSlot> slots;
        try {
            slots = split_prime(K, p);
        } catch (const input_error&) {
            return;
        }
        for (auto& slot : slots) {
            if (slot.index_risk) return; // skip ramified/dubious primes entirely
        }
        for (auto& slot : slots) {
            if (slot.degree == 1 || allow_higher_degree) {
                if (auto w = try_witness(C, slot)) {
                    out.witnesses.push_back(std::move(*w));
                    return; // one slot per rational prime
                }
            }
        }
    };
    for (std::uint64_t p : PrimeTable::instance().up_to(500)) {
        if (out.witnesses.size() >= witnesses) break;
        consider(p, false);
    }
    if (out.witnesses.size() < witnesses) {
        for (std::uint64_t p : PrimeTable::instance().up_to(500)) {
            if (out.witnesses.size() >= witnesses) break;
            bool seen = false;
            for (auto& w : out.witnesses)
                if (w.slot.p == p) seen = true;
            if (!seen) consider(p, true);
        }
    }
    if (out.witnesses.size() < witnesses) {
        for (std::uint64_t p : PrimeTable::instance().in_open_range(500, 3000)) {
            if (out.witnesses.size() >= witnesses) break;
            consider(p, true);
        }
    }
    if (out.witnesses.empty()) throw verify_error("torsion_bound: no good witness primes found");
    for (auto& w : out.witnesses)
        out.bound = Integer::gcd(out.bound, Integer(static_cast<unsigned long long>(w.count)));
    return out;
}

std::optional<Integer> point_order(const ECurve<NFElem>& C, const EPoint<NFElem>& P, const Integer& B) {
    if (P.inf) return Integer(1);
    if (B.sign() <= 0) throw input_error("point_order: invalid bound");
    if (!C.mul(B, P).inf) return std::nullopt;
    Integer d = B;
    for (auto [p, e] : factor_u64(B.to_u64())) {
        Integer P_(static_cast<unsigned long long>(p));
        for (unsigned i = 0; i < e; ++i) {
            Integer cand = d / P_;
            if (d.fmod(P_).is_zero() && C.mul(cand, P).inf) d = cand;
            else break;
        }
    }
    return d;
}

std::vector<EPoint<NFElem>> points_of_order(const ECurve<NFElem>& C, unsigned n) {
    std::vector<EPoint<NFElem>> out;
    if (n == 1) return out;
    const NFElem& pr = C.proto();
    if (n == 2) {
        // x-roots of the 2-division cubic carry a unique y = -(a1 x + a3)/2
        for (const NFElem& x : roots_in_K(two_division_cubic(C))) {
            NFElem y = -(C.a1 * x + C.a3) * pr.from_long(2).inv();
            auto T = EPoint<NFElem>::affine(x, y);
            if (C.on_curve(T)) out.push_back(T);
        }
        return out;
    }
    auto prim = division_poly_primitive(C, n);
    for (const NFElem& x : roots_in_K(prim)) {
        for (const NFElem& y : C.lift_x(x, sqrt_hook<NFElem>())) {
            auto P = EPoint<NFElem>::affine(x, y);
            if (C.on_curve(P)) out.push_back(P);
        }
    }
    return out;
}

namespace {

// x-coordinates of points R with l*R = T, as a polynomial in x (l = 2 or 3):
// x([l]R) = phi_l / psi_l^2 equated to x(T).
UniPoly<NFElem> division_preimage_poly(const ECurve<NFElem>& C, const EPoint<NFElem>& T, unsigned l) {
    if (l == 2) return halving_preimage_poly(C, T);
    if (l != 3) throw input_error("division_preimage_poly: only l = 2, 3 supported");
    auto f = division_poly_table(C, 4);
    auto Tpoly = two_division_cubic(C);
    auto x = UniPoly<NFElem>::x(C.proto());
    // phi_3 = x f_3^2 - f_4 * T(x)   (psi_4 = f_4 psi_2, psi_2^2 = T)
    auto phi3 = x * f[3] * f[3] - f[4] * Tpoly;
    return phi3 - (f[3] * f[3]).scaled(T.x);
}

std::vector<EPoint<NFElem>> preimage_points(const ECurve<NFElem>& C, const EPoint<NFElem>& T,
                                            unsigned l) {
    std::vector<EPoint<NFElem>> out;
    for (const NFElem& x : roots_in_K(division_preimage_poly(C, T, l)))
        for (const NFElem& y : C.lift_x(x, sqrt_hook<NFElem>())) {
            auto R = EPoint<NFElem>::affine(x, y);
            if (C.on_curve(R) && C.mul(static_cast<long>(l), R) == T) out.push_back(R);
        }
    return out;
}

} // namespace

// Points of exact order l^e, built by repeated l-division from the order-l
// layer (keeps the division-polynomial degrees small).
std::vector<EPoint<NFElem>> points_of_prime_power_order(const ECurve<NFElem>& C, unsigned l,
                                                        unsigned e) {
    std::vector<EPoint<NFElem>> layer = points_of_order(C, l);
    for (unsigned j = 2; j <= e && !layer.empty(); ++j) {
        std::vector<EPoint<NFElem>> next;
        for (const auto& T : layer)
            for (auto& R : preimage_points(C, T, l)) next.push_back(R);
        layer = std::move(next);
    }
    return layer;
}

namespace {

// A point of exact order n, reusing the marked point's prime-power parts
// where possible and searching for the rest.
std::optional<EPoint<NFElem>> assemble_generator(const ECurve<NFElem>& C, unsigned n,
                                                 std::optional<EPoint<NFElem>> marked,
                                                 const Integer& marked_order) {
    EPoint<NFElem> acc = EPoint<NFElem>::infinity(C.proto());
    std::uint64_t mo = marked ? marked_order.to_u64() : 1;
    for (auto [l, e] : factor_u64(n)) {
        std::uint64_t le = 1;
        for (unsigned i = 0; i < e; ++i) le *= l;
        if (marked && mo % le == 0) {
            acc = C.add(acc, C.mul(Integer(static_cast<unsigned long long>(mo / le)), *marked));
            continue;
        }
        if (l > 5 && e == 1 && l > 7) return std::nullopt; // division degree too large
        auto pts = points_of_prime_power_order(C, static_cast<unsigned>(l), e);
        if (pts.empty()) return std::nullopt;
        acc = C.add(acc, pts.front());
    }
    // exact order check
    if (acc.inf && n > 1) return std::nullopt;
    if (!C.mul(static_cast<long>(n), acc).inf) return std::nullopt;
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0 && C.mul(static_cast<long>(d), acc).inf) return std::nullopt;
    return acc;
}

// Search for a point of order m whose span with G has m*n elements.
std::optional<EPoint<NFElem>> complementary_generator(const ECurve<NFElem>& C,
                                                      const EPoint<NFElem>& G, unsigned m,
                                                      unsigned n) {
    auto span_size = [&](const EPoint<NFElem>& H) {
        std::set<std::string> seen;
        EPoint<NFElem> iG = EPoint<NFElem>::infinity(C.proto());
        for (unsigned i = 0; i < n; ++i) {
            EPoint<NFElem> pt = iG;
            for (unsigned j = 0; j < m; ++j) {
                seen.insert(pt.inf ? "inf" : pt.x.to_string() + "|" + pt.y.to_string());
                pt = C.add(pt, H);
            }
            iG = C.add(iG, G);
        }
        return seen.size();
    };
    std::vector<EPoint<NFElem>> candidates;
    if (m == 2 || m == 3 || m == 5) {
        candidates = points_of_order(C, m);
    } else if (m == 4) {
        for (const auto& T : points_of_order(C, 2)) {
            auto quartic = halving_preimage_poly(C, T);
            for (const NFElem& x : roots_in_K(quartic))
                for (const NFElem& y : C.lift_x(x, sqrt_hook<NFElem>()))
                    candidates.push_back(EPoint<NFElem>::affine(x, y));
        }
    } else if (m == 6) {
        auto twos = points_of_order(C, 2);
        auto threes = points_of_order(C, 3);
        for (const auto& T2 : twos)
            for (const auto& T3 : threes) candidates.push_back(C.add(T2, T3));
    } else {
        return std::nullopt;
    }
    for (const auto& H : candidates) {
        if (H.inf || !C.on_curve(H)) continue;
        // require exact order m
        bool ord_m = C.mul(static_cast<long>(m), H).inf;
        if (!ord_m) continue;
        bool exact = true;
        for (unsigned d = 1; d < m; ++d)
            if (m % d == 0 && d > 0 && C.mul(static_cast<long>(d), H).inf) { exact = false; break; }
        if (!exact) continue;
        if (span_size(H) == static_cast<std::size_t>(m) * n) return H;
    }
    return std::nullopt;
}

} // namespace

TorsionCertificate certify_torsion(const ECurve<NFElem>& C, unsigned m, unsigned n,
                                   std::optional<EPoint<NFElem>> generator, const std::string& label) {
    TorsionCertificate cert;
    cert.curve_label = label;
    cert.m = m;
    cert.n = n;
    if (m == 0 || n == 0 || n % m != 0) {
        cert.detail = "claim requires m | n";
        return cert;
    }
    cert.bound = torsion_bound(C, 5, 2ULL * n);
    const Integer target(static_cast<unsigned long long>(m) * n);
    if (!cert.bound.bound.fmod(target).is_zero()) {
        cert.detail = "claimed order does not divide the reduction bound gcd = " + cert.bound.bound.to_string();
        return cert;
    }

    // generator of order n; the marked point's prime-power parts are reused
    // when it generates only a proper subgroup
    EPoint<NFElem> G = EPoint<NFElem>::infinity(C.proto());
    if (n > 1) {
        Integer marked_ord(0);
        bool have_G = false;
        if (generator) {
            if (!C.on_curve(*generator)) {
                cert.detail = "supplied generator is not on the curve";
                return cert;
            }
            auto ord = point_order(C, *generator, cert.bound.bound);
            if (!ord) {
                cert.detail = "supplied generator has infinite order";
                return cert;
            }
            marked_ord = *ord;
            if (*ord == Integer(static_cast<unsigned long long>(n))) {
                G = *generator;
                have_G = true;
            }
        }
        if (!have_G) {
            auto g = assemble_generator(C, n, generator, marked_ord);
            if (!g) {
                cert.detail = "generator of order " + std::to_string(n) + " not located";
                return cert;
            }
            G = *g;
        }
        cert.generators.push_back(G);
    }

    // complementary generator of order m with an enumerated span of size m*n
    if (m > 1) {
        auto H = complementary_generator(C, G, m, n);
        if (!H) {
            cert.detail = "complementary generator of order " + std::to_string(m) + " not located";
            return cert;
        }
        cert.generators.push_back(*H);
    }
    cert.subgroup_enumerated = true;

    // upper bound: gcd match, else invariant factors at every witness
    if (cert.bound.bound == target) {
        cert.route = "order-match";
        cert.ok = true;
        return cert;
    }
    auto try_invariant_route = [&]() -> bool {
        std::uint64_t gm = 0, gn = 0;
        for (auto& w : cert.bound.witnesses) {
            fill_structure(C, w);
            gm = std::gcd(gm, w.m_i);
            gn = std::gcd(gn, w.n_i);
        }
        return gm == m && gn == n;
    };
    if (try_invariant_route()) {
        cert.route = "invariant-factor";
        cert.ok = true;
        return cert;
    }
    // add more witnesses and retry once
    auto extra = torsion_bound(C, 10, 2ULL * n);
    for (auto& w : extra.witnesses) {
        bool seen = false;
        for (auto& have : cert.bound.witnesses)
            if (have.slot.p == w.slot.p) seen = true;
        if (!seen) cert.bound.witnesses.push_back(w);
    }
    cert.bound.bound = Integer(0);
    for (auto& w : cert.bound.witnesses)
        cert.bound.bound = Integer::gcd(cert.bound.bound, Integer(static_cast<unsigned long long>(w.count)));
    if (cert.bound.bound == target) {
        cert.route = "order-match";
        cert.ok = true;
        return cert;
    }
    if (try_invariant_route()) {
        cert.route = "invariant-factor";
        cert.ok = true;
        return cert;
    }
    cert.detail = "inconclusive, add primes (bound gcd = " + cert.bound.bound.to_string() + ")";
    return cert;
}

namespace {

// Order of the reduction of P at a witness slot; nullopt when P meets the
// zero section there (denominator divisible by p).
std::optional<std::uint64_t> order_mod_witness(const ECurve<NFElem>& C, const EPoint<NFElem>& P,
                                               const WitnessPrime& w) {
    auto Cq = reduce_curve(C, w.slot);
    auto Pq = reduce_point(P, w.slot);
    if (!Cq || !Pq) return std::nullopt;
    std::uint64_t d = w.count;
    if (!Cq->mul(Integer(static_cast<unsigned long long>(d)), *Pq).inf)
        throw internal_error("order_mod_witness: count does not kill the point");
    for (auto [p, e] : factor_u64(w.count)) {
        for (unsigned i = 0; i < e; ++i) {
            std::uint64_t cand = d / p;
            if (d % p == 0 && Cq->mul(Integer(static_cast<unsigned long long>(cand)), *Pq).inf) d = cand;
            else break;
        }
    }
    return d;
}

// Decides torsion-ness of a point of potentially large height: the order of a
// torsion point is preserved by reduction at every good prime, so it must
// agree across witnesses and divide the gcd bound; the final multiplication is
// then by that small common order only.
// Returns the exact order when P is torsion, nullopt when provably infinite.
std::optional<Integer> order_or_infinite(const ECurve<NFElem>& C, const EPoint<NFElem>& P,
                                         const TorsionBound& bound) {
    if (P.inf) return Integer(1);
    std::optional<std::uint64_t> common;
    bool have_any = false;
    for (const auto& w : bound.witnesses) {
        auto o = order_mod_witness(C, P, w);
        if (!o) continue;
        have_any = true;
        if (!common) {
            common = o;
        } else if (*common != *o) {
            return std::nullopt; // orders disagree: P is not torsion
        }
    }
    if (!have_any) throw verify_error("order_or_infinite: point not reducible at any witness");
    Integer o(static_cast<unsigned long long>(*common));
    if (!bound.bound.fmod(o).is_zero()) return std::nullopt;
    if (*common > 4096) throw internal_error("order_or_infinite: implausibly large common order");
    if (!C.mul(o, P).inf) return std::nullopt; // exact disproof: torsion would have this order
    // exact order extraction (small multiplier territory)
    Integer d = o;
    for (auto [p, e] : factor_u64(*common)) {
        Integer Pp(static_cast<unsigned long long>(p));
        for (unsigned i = 0; i < e; ++i) {
            Integer cand = d / Pp;
            if (d.fmod(Pp).is_zero() && C.mul(cand, P).inf) d = cand;
            else break;
        }
    }
    return d;
}

} // namespace

InfiniteOrderCertificate certify_infinite(const ECurve<NFElem>& C, const EPoint<NFElem>& P,
                                          const std::string& label) {
    InfiniteOrderCertificate cert;
    cert.curve_label = label;
    cert.point = P;
    if (!C.on_curve(P)) {
        cert.detail = "point is not on the curve";
        return cert;
    }
    cert.bound = torsion_bound(C, 3, 2);
    auto ord = order_or_infinite(C, P, cert.bound);
    if (ord) {
        cert.detail = "point is torsion of order " + ord->to_string();
        return cert;
    }
    cert.ok = true;
    return cert;
}

IndependenceReport bounded_independence(const ECurve<NFElem>& C,
                                        const std::vector<EPoint<NFElem>>& points,
                                        unsigned coeff_bound) {
    IndependenceReport rep;
    rep.coeff_bound = coeff_bound;
    if (points.empty() || coeff_bound == 0) throw input_error("bounded_independence: bad input");
    auto bound = torsion_bound(C, 5, 2);

    // reductions for the fast prefilter: a torsion combination has the same
    // order at every witness, so differing orders certify non-torsion
    struct Reduced {
        ECurve<Fq64> curve;
        std::uint64_t count;
        std::vector<EPoint<Fq64>> pts;
    };
    std::vector<Reduced> reductions;
    for (auto& w : bound.witnesses) {
        auto Cq = reduce_curve(C, w.slot);
        if (!Cq) continue;
        Reduced r{*Cq, w.count, {}};
        bool all_ok = true;
        for (const auto& P : points) {
            auto Pq = reduce_point(P, w.slot);
            if (!Pq) { all_ok = false; break; }
            r.pts.push_back(*Pq);
        }
        if (all_ok) reductions.push_back(std::move(r));
    }
    if (reductions.size() < 2)
        throw verify_error("bounded_independence: fewer than two usable reduction witnesses");

    auto order_in = [](const ECurve<Fq64>& curve, std::uint64_t count, const EPoint<Fq64>& pt) {
        std::uint64_t d = count;
        for (auto [p, e] : factor_u64(count)) {
            for (unsigned i = 0; i < e; ++i) {
                std::uint64_t cand = d / p;
                if (d % p == 0 && curve.mul(Integer(static_cast<unsigned long long>(cand)), pt).inf)
                    d = cand;
                else break;
            }
        }
        return d;
    };

    const long Cb = static_cast<long>(coeff_bound);
    std::vector<long> coeff(points.size(), -Cb);
    auto advance = [&]() {
        for (std::size_t i = 0; i < coeff.size(); ++i) {
            if (coeff[i] < Cb) { ++coeff[i]; return true; }
            coeff[i] = -Cb;
        }
        return false;
    };
    // iterate all nonzero vectors; skip negations by requiring the first
    // nonzero coefficient to be positive
    do {
        std::size_t first_nz = coeff.size();
        for (std::size_t i = 0; i < coeff.size(); ++i)
            if (coeff[i] != 0) { first_nz = i; break; }
        if (first_nz == coeff.size() || coeff[first_nz] < 0) continue;

        std::optional<std::uint64_t> common;
        bool surely_nontorsion = false;
        for (auto& r : reductions) {
            EPoint<Fq64> s = EPoint<Fq64>::infinity(r.curve.proto());
            for (std::size_t i = 0; i < points.size(); ++i)
                if (coeff[i] != 0) s = r.curve.add(s, r.curve.mul(Integer(coeff[i]), r.pts[i]));
            std::uint64_t o = order_in(r.curve, r.count, s);
            if (!common) common = o;
            else if (*common != o) { surely_nontorsion = true; break; }
        }
        if (surely_nontorsion) continue;
        if (!bound.bound.fmod(Integer(static_cast<unsigned long long>(*common))).is_zero()) continue;
        if (*common > 4096)
            throw internal_error("bounded_independence: implausibly large common order");

        // exact evaluation: a torsion combination must be killed by the small
        // common order of its reductions
        EPoint<NFElem> s = EPoint<NFElem>::infinity(C.proto());
        for (std::size_t i = 0; i < points.size(); ++i)
            if (coeff[i] != 0) s = C.add(s, C.mul(Integer(coeff[i]), points[i]));
        if (C.mul(Integer(static_cast<unsigned long long>(*common)), s).inf) {
            rep.relation = coeff;
            rep.detail = "small relation found";
            return rep;
        }
    } while (advance());
    rep.ok = true;
    return rep;
}

bool torsion_admissible(unsigned field_degree, unsigned m, unsigned n) {
    auto list = admissible_torsion_list(field_degree);
    return std::find(list.begin(), list.end(), std::make_pair(m, n)) != list.end();
}

std::vector<std::pair<unsigned, unsigned>> admissible_torsion_list(unsigned field_degree) {
    std::vector<std::pair<unsigned, unsigned>> out;
    switch (field_degree) {
    case 1:
        for (unsigned k = 1; k <= 10; ++k) out.emplace_back(1, k);
        out.emplace_back(1, 12);
        for (unsigned k = 1; k <= 4; ++k) out.emplace_back(2, 2 * k);
        break;
    case 2:
        for (unsigned k = 1; k <= 18; ++k)
            if (k != 17) out.emplace_back(1, k);
        for (unsigned k = 1; k <= 6; ++k) out.emplace_back(2, 2 * k);
        out.emplace_back(3, 3);
        out.emplace_back(3, 6);
        out.emplace_back(4, 4);
        break;
    case 3:
        for (unsigned k = 1; k <= 20; ++k)
            if (k != 17 && k != 19) out.emplace_back(1, k);
        for (unsigned k = 1; k <= 7; ++k) out.emplace_back(2, 2 * k);
        break;
    case 4:
        for (unsigned k = 1; k <= 24; ++k)
            if (k != 19 && k != 23) out.emplace_back(1, k);
        for (unsigned k = 1; k <= 9; ++k) out.emplace_back(2, 2 * k);
        for (unsigned k = 1; k <= 3; ++k) out.emplace_back(3, 3 * k);
        for (unsigned k = 1; k <= 2; ++k) out.emplace_back(4, 4 * k);
        out.emplace_back(5, 5);
        out.emplace_back(6, 6);
        break;
    default:
        throw input_error("admissible torsion lists cover degrees 1..4");
    }
    return out;
}

} // namespace tlab
