#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "core/ellcurve.hpp"
#include "core/fq.hpp"
#include "core/qpoly.hpp"

namespace tlab {

// ---- elliptic point counting -----------------------------------------------

// Exact #E(F_p) by x-enumeration (quadratic character per x).  p <= ~10^6.
std::uint64_t count_elliptic_enum(const ECurve<Fp64>& C);
std::uint64_t count_elliptic_enum(const ECurve<Fq64>& C);

// Exact #E(F_p) by Shanks-Mestre baby-step giant-step with quadratic-twist
// disambiguation; delegates to enumeration below the interval-uniqueness
// threshold.
std::uint64_t count_elliptic_bsgs(const ECurve<Fp64>& C);

// Dispatcher: enumeration for small fields, BSGS for prime fields, lcm-based
// BSGS for extension fields.
std::uint64_t count_points(const ECurve<Fp64>& C);
std::uint64_t count_points(const ECurve<Fq64>& C);

// Invariant factors (m, n), m | n, m*n = #E, m | q-1; verified exactly via
// division-polynomial torsion ranks.
std::pair<std::uint64_t, std::uint64_t> group_structure(const ECurve<Fp64>& C);
std::pair<std::uint64_t, std::uint64_t> group_structure(const ECurve<Fq64>& C);

// ---- genus-2 plane models ----------------------------------------------------

// v^2 - q(u) v + r(u) = 0 with deg q = 3, deg r <= 6, plus the chart at
// infinity obtained from u = 1/U, v = V/U^3.
struct PlaneModel {
    std::string name;
    QPoly qpoly;    // q(u)
    QPoly rpoly;    // r(u)
    QPoly excluded; // degeneracy locus in u (the affine curve minus these is the open modular curve)
};

struct CountResult {
    std::uint64_t q = 0;
    unsigned k = 1;
    std::uint64_t count = 0;     // points on the smooth projective model over F_{q^k}
    std::uint64_t affine = 0;    // affine chart contribution
    std::uint64_t at_infinity = 0;
};

CountResult count_genus2(const PlaneModel& model, std::uint64_t q, unsigned k);

// Same count through the v'^2 = q^2 - 4r hyperelliptic form (odd q only);
// used as an independent cross-check.
CountResult count_genus2_hyperelliptic(const PlaneModel& model, std::uint64_t q, unsigned k);

struct ZetaNumerator {
    std::vector<Integer> coeffs; // 1 + a1 t + a2 t^2 + q a1 t^3 + q^2 t^4
    std::uint64_t q = 0;
    Integer at1() const;
};

// Reconstructs the degree-4 numerator from N1 = #C(F_q), N2 = #C(F_{q^2}).
ZetaNumerator zeta_numerator_genus2(std::uint64_t n1, std::uint64_t n2, std::uint64_t q);

} // namespace tlab
