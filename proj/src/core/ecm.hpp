#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/curvemaps.hpp"
#include "core/ellcurve.hpp"
#include "core/numberfield.hpp"

namespace tlab {

// A prime interval "lo < p < nth(hi_index)".
struct PrimeRange {
    std::uint64_t lo = 30;
    std::size_t hi_index = 1010;
    std::vector<std::uint64_t> primes() const;
    std::string to_string() const;
};

struct SmoothnessReport {
    std::string curve;
    PrimeRange range;
    std::vector<std::uint64_t> bounds;        // e.g. {100, 200}
    std::vector<std::uint64_t> counts;        // per bound
    std::vector<std::uint64_t> skipped;       // bad-reduction primes inside the range
    std::uint64_t primes_seen = 0;
};

// Tallies how often #E(F_p) is bound-smooth over the prime range; counting is
// partitioned over jobs threads with a deterministic merge.
SmoothnessReport smoothness_experiment(const ECurve<Rational>& C, const std::string& label,
                                       const PrimeRange& range, std::vector<std::uint64_t> bounds,
                                       unsigned jobs = 1);

struct DensityRow {
    int chi1 = 0, chi2 = 0;       // Legendre symbols of the two field discriminants
    std::uint64_t divisor = 1;    // implied divisor of #E(F_p) in this class
    std::uint64_t primes = 0;
    double fraction = 0.0;
};

struct DensityReport {
    std::vector<DensityRow> rows;
    std::uint64_t primes_seen = 0;
    bool divisibility_verified = false;
};

// Splitting classes of primes with respect to one or two quadratic fields and
// the implied divisibility of #E(F_p), verified per prime.
// divisors: {neither, split d1 only, split d2 only, split both} for two
// fields; {non-split, split} for one field.
DensityReport divisibility_densities(const ECurve<Rational>& C, const std::vector<Integer>& ds,
                                     const std::vector<std::uint64_t>& divisors,
                                     const PrimeRange& range, unsigned jobs = 1);

// Theorem check: E(F_{p^d}) contains Z/m + Z/n when K has a slot of residue
// degree dividing d and the torsion embeds over K.
struct SubgroupCheck {
    std::uint64_t p = 0;
    unsigned slot_degree = 0;
    std::uint64_t m_i = 0, n_i = 0;
    bool ok = false;
    std::string detail;
};
SubgroupCheck reduction_subgroup_check(const ECurve<NFElem>& C, unsigned m, unsigned n,
                                       std::uint64_t p, unsigned d);

// ---- stage-1 elliptic curve factoring ----------------------------------------

struct EcmAttempt {
    Integer N;
    std::uint64_t b1 = 0;
    std::string curve;
    std::optional<Integer> factor;
    Integer gcd_witness;   // the gcd event that produced the factor (or 1/N)
    std::string outcome;   // "factor", "none", "rejected"
};

// Stage 1: multiply a point by prod_{l <= B1} l^floor(log_l B1) on the curve
// reduced into Z/N with inversion-free projective arithmetic; a proper gcd
// event yields a factor.  gcd(N, 6) must be 1.
EcmAttempt ecm_stage1(const Integer& N, const ECurve<Rational>& C, const EPoint<Rational>& P,
                      std::uint64_t b1, const std::string& label = "");

// Number-field sources enter through a root of the defining polynomial mod N
// (quadratic fields only); the attempt is rejected when no root exists, and a
// factor found during the root search is reported directly.
EcmAttempt ecm_stage1_nf(const Integer& N, const ECurve<NFElem>& C, const EPoint<NFElem>& P,
                         std::uint64_t b1, const std::string& label = "");

} // namespace tlab
