#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/curvemaps.hpp"
#include "core/ellcurve.hpp"
#include "core/numberfield.hpp"

namespace tlab {

// One reduction witness: a degree-d prime slot together with the order (and,
// when required, the invariant factors) of the reduced curve.
struct WitnessPrime {
    PrimeSlot slot;
    std::uint64_t count = 0;
    std::uint64_t m_i = 0, n_i = 0; // invariant factors; 0 = not computed
    std::string count_method;       // "enumeration" or "bsgs"
};

struct TorsionBound {
    Integer bound;                   // gcd of witness counts; torsion order divides it
    std::vector<WitnessPrime> witnesses;
};

// Collects good witness primes for E/K and returns the gcd bound.  A good
// prime is odd, unramified in the monogenic order, coprime to avoid_divisor,
// with integral curve coefficients and good reduction at the slot.  Degree-1
// slots are preferred; higher-degree slots are used as fallback.
TorsionBound torsion_bound(const ECurve<NFElem>& C, unsigned witnesses = 5,
                           std::uint64_t avoid_divisor = 2);

// Exact order of P given a valid torsion bound B; nullopt = infinite order.
std::optional<Integer> point_order(const ECurve<NFElem>& C, const EPoint<NFElem>& P, const Integer& B);

struct TorsionCertificate {
    std::string curve_label;
    unsigned m = 1, n = 1;
    std::vector<EPoint<NFElem>> generators; // [G] or [G, H] with orders [n, m]
    TorsionBound bound;
    std::string route;   // "order-match" or "invariant-factor"
    bool subgroup_enumerated = false;
    bool ok = false;
    std::string detail;  // failure reason or notes
};

// Certifies E(K)_tors == Z/m + Z/n exactly (m | n).  A generator of order n
// may be supplied (the Tate-form marked point); otherwise a search through
// division-polynomial roots is attempted.  For m >= 2 the complementary
// generator is located automatically.
TorsionCertificate certify_torsion(const ECurve<NFElem>& C, unsigned m, unsigned n,
                                   std::optional<EPoint<NFElem>> generator,
                                   const std::string& label = "");

struct InfiniteOrderCertificate {
    std::string curve_label;
    EPoint<NFElem> point;
    TorsionBound bound;
    bool ok = false;
    std::string detail; // if the point is torsion, its order is reported here
};

InfiniteOrderCertificate certify_infinite(const ECurve<NFElem>& C, const EPoint<NFElem>& P,
                                          const std::string& label = "");

struct IndependenceReport {
    unsigned coeff_bound = 0;
    bool ok = false;
    std::vector<long> relation; // populated when a small relation is found
    std::string detail;
};

// Checks that no relation sum c_i P_i lies in the torsion subgroup for
// 0 < max |c_i| <= coeff_bound.  This is "no small relation", not a rank proof.
IndependenceReport bounded_independence(const ECurve<NFElem>& C,
                                        const std::vector<EPoint<NFElem>>& points,
                                        unsigned coeff_bound = 3);

// Convenience: search all points of exact order n on E(K) via the primitive
// division polynomial (cost grows quickly with n; intended for n <= 6).
std::vector<EPoint<NFElem>> points_of_order(const ECurve<NFElem>& C, unsigned n);

// Points of exact order l^e, built by repeated l-division (l = 2 or 3) from
// the order-l layer.
std::vector<EPoint<NFElem>> points_of_prime_power_order(const ECurve<NFElem>& C, unsigned l,
                                                        unsigned e);

// Admissible torsion structures over fields of degree 1..4.
bool torsion_admissible(unsigned field_degree, unsigned m, unsigned n);
std::vector<std::pair<unsigned, unsigned>> admissible_torsion_list(unsigned field_degree);

} // namespace tlab
