#include "core/ecm.hpp"

#include <algorithm>
#include <thread>

#include "core/primes.hpp"
#include "core/zeta.hpp"

namespace tlab {

std::vector<std::uint64_t> PrimeRange::primes() const {
    auto& PT = PrimeTable::instance();
    return PT.in_open_range(lo, PT.nth(hi_index));
}

std::string PrimeRange::to_string() const {
    return std::to_string(lo) + " < p < p_" + std::to_string(hi_index);
}

namespace {

bool smooth_u64(std::uint64_t n, const std::vector<std::uint64_t>& small_primes) {
    for (std::uint64_t p : small_primes) {
        while (n % p == 0) n /= p;
        if (n == 1) return true;
    }
    return n == 1;
}

template <class Fn>
void parallel_over(const std::vector<std::uint64_t>& items, unsigned jobs, Fn per_chunk) {
    jobs = std::max(1u, jobs);
    if (jobs == 1 || items.size() < 64) {
        per_chunk(0, items.size(), 0);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (items.size() + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
        std::size_t lo = j * chunk, hi = std::min(items.size(), lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([=] { per_chunk(lo, hi, j); });
    }
    for (auto& t : pool) t.join();
}

} // namespace

SmoothnessReport smoothness_experiment(const ECurve<Rational>& C, const std::string& label,
                                       const PrimeRange& range, std::vector<std::uint64_t> bounds,
                                       unsigned jobs) {
    SmoothnessReport rep;
    rep.curve = label;
    rep.range = range;
    std::sort(bounds.begin(), bounds.end());
    rep.bounds = bounds;
    auto primes = range.primes();
    rep.primes_seen = primes.size();
    std::vector<std::vector<std::uint64_t>> small_primes;
    for (auto b : bounds) small_primes.push_back(PrimeTable::instance().up_to(b));

    jobs = std::max(1u, jobs);
    std::vector<std::vector<std::uint64_t>> counts(jobs, std::vector<std::uint64_t>(bounds.size(), 0));
    std::vector<std::vector<std::uint64_t>> skipped(jobs);
    parallel_over(primes, jobs, [&](std::size_t lo, std::size_t hi, unsigned job) {
        for (std::size_t i = lo; i < hi; ++i) {
            auto Cp = reduce_curve(C, primes[i]);
            if (!Cp) {
                skipped[job].push_back(primes[i]);
                continue;
            }
            std::uint64_t n = count_points(*Cp);
            for (std::size_t b = 0; b < bounds.size(); ++b)
                if (smooth_u64(n, small_primes[b])) ++counts[job][b];
        }
    });
    rep.counts.assign(bounds.size(), 0);
    for (unsigned j = 0; j < jobs; ++j) {
        for (std::size_t b = 0; b < bounds.size(); ++b) rep.counts[b] += counts[j][b];
        for (auto p : skipped[j]) rep.skipped.push_back(p);
    }
    std::sort(rep.skipped.begin(), rep.skipped.end());
    return rep;
}

DensityReport divisibility_densities(const ECurve<Rational>& C, const std::vector<Integer>& ds,
                                     const std::vector<std::uint64_t>& divisors,
                                     const PrimeRange& range, unsigned jobs) {
    if (ds.empty() || ds.size() > 2) throw input_error("divisibility_densities: one or two fields");
    std::size_t classes = ds.size() == 1 ? 2 : 4;
    if (divisors.size() != classes) throw input_error("divisibility_densities: divisor per class");
    auto primes = range.primes();
    DensityReport rep;
    rep.rows.resize(classes);
    jobs = std::max(1u, jobs);
    std::vector<std::vector<std::uint64_t>> tallies(jobs, std::vector<std::uint64_t>(classes, 0));
    std::vector<bool> ok(jobs, true);
    std::vector<std::uint64_t> seen(jobs, 0);
    parallel_over(primes, jobs, [&](std::size_t lo, std::size_t hi, unsigned job) {
        for (std::size_t i = lo; i < hi; ++i) {
            std::uint64_t p = primes[i];
            auto Cp = reduce_curve(C, p);
            if (!Cp) continue;
            std::vector<int> chi;
            bool ramified = false;
            for (const auto& d : ds) {
                Fp64 dp = Fp64::from_integer(d, p);
                int c = dp.is_zero() ? 0 : dp.legendre();
                if (c == 0) ramified = true;
                chi.push_back(c);
            }
            if (ramified) continue;
            std::size_t cls = 0;
            if (ds.size() == 1) {
                cls = chi[0] == 1 ? 1 : 0;
            } else {
                cls = (chi[0] == 1 ? 1 : 0) + (chi[1] == 1 ? 2 : 0);
            }
            std::uint64_t n = count_points(*Cp);
            if (n % divisors[cls] != 0) ok[job] = false;
            ++tallies[job][cls];
            ++seen[job];
        }
    });
    rep.divisibility_verified = true;
    for (unsigned j = 0; j < jobs; ++j) {
        if (!ok[j]) rep.divisibility_verified = false;
        rep.primes_seen += seen[j];
        for (std::size_t c = 0; c < classes; ++c) rep.rows[c].primes += tallies[j][c];
    }
    for (std::size_t c = 0; c < classes; ++c) {
        rep.rows[c].divisor = divisors[c];
        rep.rows[c].chi1 = (ds.size() == 1) ? (c == 1 ? 1 : -1) : ((c & 1) ? 1 : -1);
        rep.rows[c].chi2 = (ds.size() == 1) ? 0 : ((c & 2) ? 1 : -1);
        rep.rows[c].fraction =
            rep.primes_seen ? static_cast<double>(rep.rows[c].primes) / static_cast<double>(rep.primes_seen) : 0.0;
    }
    return rep;
}

SubgroupCheck reduction_subgroup_check(const ECurve<NFElem>& C, unsigned m, unsigned n,
                                       std::uint64_t p, unsigned d) {
    SubgroupCheck chk;
    chk.p = p;
    Integer P(static_cast<unsigned long long>(p));
    if (P.fmod(Integer(static_cast<unsigned long long>(n))).is_zero() || p == 2)
        throw input_error("reduction_subgroup_check: p must not divide n");
    const NumberField& K = C.a1.field();
    for (const auto& slot : split_prime(K, p)) {
        if (d % slot.degree != 0) continue;
        auto Cq = reduce_curve(C, slot);
        if (!Cq) continue;
        chk.slot_degree = slot.degree;
        auto [mi, ni] = group_structure(*Cq);
        chk.m_i = mi;
        chk.n_i = ni;
        chk.ok = (mi % m == 0) && (ni % n == 0);
        if (!chk.ok) chk.detail = "invariant factors do not contain the claimed subgroup";
        return chk;
    }
    throw input_error("reduction_subgroup_check: no slot of residue degree dividing d");
}

namespace {

struct FactorEvent {
    Integer g;
};

// Z/N arithmetic helpers that surface factor events through gcds.
Integer inv_mod_n(const Integer& a, const Integer& N) {
    Integer s(0), t(0);
    Integer g = Integer::gcdext(a.fmod(N), N, s, t);
    if (!g.is_one()) throw FactorEvent{g};
    return s.fmod(N);
}

Integer rational_mod_n(const Rational& r, const Integer& N) {
    Integer den_inv = inv_mod_n(r.den(), N);
    return (r.num().fmod(N) * den_inv).fmod(N);
}

struct ProjPoint {
    Integer X, Y, Z;
};

// y^2 z = x^3 + a x z^2 + b z^3 over Z/N, inversion-free formulas
struct ShortCurveModN {
    Integer a, b, N;

    Integer mod(const Integer& x) const { return x.fmod(N); }

    ProjPoint dbl(const ProjPoint& P) const {
        Integer W = mod(a * P.Z * P.Z + Integer(3) * P.X * P.X);
        Integer S = mod(P.Y * P.Z);
        Integer B = mod(P.X * P.Y * S);
        Integer H = mod(W * W - Integer(8) * B);
        Integer X2 = mod(Integer(2) * H * S);
        Integer Y2 = mod(W * (Integer(4) * B - H) - Integer(8) * P.Y * P.Y * S * S);
        Integer Z2 = mod(Integer(8) * S * S * S);
        return {X2, Y2, Z2};
    }

    ProjPoint add(const ProjPoint& P, const ProjPoint& Q) const {
        Integer U1 = mod(Q.Y * P.Z), U2 = mod(P.Y * Q.Z);
        Integer V1 = mod(Q.X * P.Z), V2 = mod(P.X * Q.Z);
        if (V1 == V2 && U1 == U2) return dbl(P);
        Integer U = mod(U1 - U2), V = mod(V1 - V2);
        Integer Zs = mod(P.Z * Q.Z);
        Integer V2q = mod(V * V), V3 = mod(V2q * V);
        Integer W = mod(U * U * Zs - V3 - Integer(2) * V2q * V2);
        Integer X3 = mod(V * W);
        Integer Y3 = mod(U * (V2q * V2 - W) - V3 * U2);
        Integer Z3 = mod(V3 * Zs);
        return {X3, Y3, Z3};
    }

    ProjPoint mul(Integer k, const ProjPoint& P) const {
        ProjPoint R{Integer(0), Integer(1), Integer(0)};
        bool started = false;
        std::vector<bool> bits;
        while (k.sign() > 0) {
            bits.push_back(k.odd());
            k = k / Integer(2);
        }
        for (std::size_t i = bits.size(); i-- > 0;) {
            if (started) R = dbl(R);
            if (bits[i]) {
                if (started) R = add(R, P);
                else { R = P; started = true; }
            }
        }
        return started ? R : ProjPoint{Integer(0), Integer(1), Integer(0)};
    }
};

EcmAttempt stage1_run(const Integer& N, std::uint64_t b1, const std::string& label,
                      const std::function<std::pair<ShortCurveModN, ProjPoint>()>& setup) {
    EcmAttempt att;
    att.N = N;
    att.b1 = b1;
    att.curve = label;
    att.gcd_witness = Integer(1);
    if (N < Integer(2)) throw input_error("ecm_stage1: N >= 2 required");
    if (!Integer::gcd(N, Integer(6)).is_one()) throw input_error("ecm_stage1: gcd(N, 6) must be 1");
    try {
        auto [curve, P] = setup();
        ProjPoint R = P;
        for (std::uint64_t l : PrimeTable::instance().up_to(b1)) {
            std::uint64_t e = 1, power = l;
            while (power <= b1 / l) { power *= l; ++e; }
            ProjPoint before = R;
            for (std::uint64_t i = 0; i < e; ++i)
                R = curve.mul(Integer(static_cast<unsigned long long>(l)), R);
            Integer g = Integer::gcd(R.Z.fmod(N), N);
            if (g.is_one()) continue;
            if (g == N) {
                // died modulo every factor inside this block; replay one
                // multiplication at a time to separate the factors
                R = before;
                for (std::uint64_t i = 0; i < e; ++i) {
                    R = curve.mul(Integer(static_cast<unsigned long long>(l)), R);
                    g = Integer::gcd(R.Z.fmod(N), N);
                    if (!g.is_one()) break;
                }
            }
            att.gcd_witness = g;
            if (g > Integer(1) && g < N) {
                att.factor = g;
                att.outcome = "factor";
            } else {
                att.outcome = "none"; // simultaneous death: orders share the same l-power
            }
            return att;
        }
        att.outcome = "none";
    } catch (const FactorEvent& ev) {
        if (ev.g < N && ev.g > Integer(1)) {
            att.factor = ev.g;
            att.gcd_witness = ev.g;
            att.outcome = "factor";
        } else {
            att.gcd_witness = ev.g;
            att.outcome = "rejected";
        }
    }
    return att;
}

std::pair<ShortCurveModN, ProjPoint> reduce_short_mod_n(const ECurve<Rational>& C,
                                                        const EPoint<Rational>& P, const Integer& N) {
    if (P.inf) throw input_error("ecm_stage1: need an affine point");
    // complete the square and depress: y^2 = x^3 - 27 c4 x - 54 c6, with
    // (x, y) -> (3^2(x + b2/12), 3^3(y + (a1 x + a3)/2)); constants are prime to N
    Rational c4 = C.c4, c6 = C.c6;
    Integer A = rational_mod_n(Rational(-27) * c4, N);
    Integer B = rational_mod_n(Rational(-54) * c6, N);
    Rational xs = Rational(9) * (P.x + C.b2 * Rational(1, Integer(12)));
    Rational ys = Rational(27) * (P.y + (C.a1 * P.x + C.a3) * Rational(1, Integer(2)));
    ShortCurveModN curve{A, B, N};
    ProjPoint R{rational_mod_n(xs, N), rational_mod_n(ys, N), Integer(1)};
    return {curve, R};
}

} // namespace

EcmAttempt ecm_stage1(const Integer& N, const ECurve<Rational>& C, const EPoint<Rational>& P,
                      std::uint64_t b1, const std::string& label) {
    return stage1_run(N, b1, label, [&] { return reduce_short_mod_n(C, P, N); });
}

namespace {

// square root mod N by Tonelli-Shanks pretending N is prime; either verifies
// or fails (and non-invertible intermediates surface factors).
std::optional<Integer> sqrt_mod_n_attempt(const Integer& a0, const Integer& N) {
    Integer a = a0.fmod(N);
    if (a.is_zero()) return a;
    if (Integer::powmod(a, (N - Integer(1)) / Integer(2), N) != Integer(1)) return std::nullopt;
    Integer r(0);
    if ((N.fmod(Integer(4))) == Integer(3)) {
        r = Integer::powmod(a, (N + Integer(1)) / Integer(4), N);
    } else {
        Integer Q = N - Integer(1);
        unsigned s = 0;
        while (!Q.odd()) { Q = Q / Integer(2); ++s; }
        Integer z(2);
        for (int i = 0; i < 256; ++i, z += Integer(1))
            if (Integer::powmod(z, (N - Integer(1)) / Integer(2), N) == N - Integer(1)) break;
        Integer c = Integer::powmod(z, Q, N);
        Integer t = Integer::powmod(a, Q, N);
        r = Integer::powmod(a, (Q + Integer(1)) / Integer(2), N);
        unsigned m = s;
        for (int guard = 0; !t.is_one() && guard < 512; ++guard) {
            Integer tt = t;
            unsigned i = 0;
            while (!tt.is_one() && i < m) { tt = (tt * tt).fmod(N); ++i; }
            if (i == m || i == 0) return std::nullopt;
            Integer b = c;
            for (unsigned j = 0; j + i + 1 < m; ++j) b = (b * b).fmod(N);
            m = i;
            c = (b * b).fmod(N);
            t = (t * c).fmod(N);
            r = (r * b).fmod(N);
        }
        if (!t.is_one()) return std::nullopt;
    }
    if ((r * r).fmod(N) != a) return std::nullopt;
    return r;
}

} // namespace

EcmAttempt ecm_stage1_nf(const Integer& N, const ECurve<NFElem>& C, const EPoint<NFElem>& P,
                         std::uint64_t b1, const std::string& label) {
    const NumberField& K = C.a1.field();
    if (K->degree == 1) {
        auto conv_c = [](const NFElem& e) { return e.rational_value(); };
        ECurve<Rational> Cq(conv_c(C.a1), conv_c(C.a2), conv_c(C.a3), conv_c(C.a4), conv_c(C.a6));
        return ecm_stage1(N, Cq, EPoint<Rational>::affine(conv_c(P.x), conv_c(P.y)), b1, label);
    }
    if (K->degree != 2) {
        EcmAttempt att;
        att.N = N;
        att.b1 = b1;
        att.curve = label;
        att.gcd_witness = Integer(1);
        att.outcome = "rejected";
        return att;
    }
    return stage1_run(N, b1, label, [&]() -> std::pair<ShortCurveModN, ProjPoint> {
        // root of x^2 + f1 x + f0 mod N
        Rational f1 = K->f.coeff(1), f0 = K->f.coeff(0);
        Integer b = rational_mod_n(f1, N), c = rational_mod_n(f0, N);
        Integer disc = (b * b - Integer(4) * c).fmod(N);
        auto root = sqrt_mod_n_attempt(disc, N);
        if (!root) throw FactorEvent{N}; // no usable root: rejected upstream
        Integer inv2 = inv_mod_n(Integer(2), N);
        Integer w = ((*root - b) * inv2).fmod(N);
        auto conv = [&](const NFElem& e) {
            Integer acc(0);
            const auto& cc = e.coords();
            for (std::size_t i = cc.size(); i-- > 0;)
                acc = (acc * w + rational_mod_n(cc[i], N)).fmod(N);
            return acc;
        };
        // reduce to a short model mod N directly from the b-invariants
        Integer A = conv(C.c4.scaled(Rational(-27)));
        Integer B = conv(C.c6.scaled(Rational(-54)));
        Integer xs = conv((P.x + C.b2.scaled(Rational(1, Integer(12)))).scaled(Rational(9)));
        Integer ys = conv((P.y + (C.a1 * P.x + C.a3).scaled(Rational(1, Integer(2)))).scaled(Rational(27)));
        return {ShortCurveModN{A, B, N}, ProjPoint{xs, ys, Integer(1)}};
    });
}

} // namespace tlab
