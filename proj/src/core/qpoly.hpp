#pragma once

#include <utility>
#include <vector>

#include "core/fp64.hpp"
#include "core/integer.hpp"
#include "core/poly.hpp"

namespace tlab {

using QPoly = UniPoly<Rational>;
using ZPoly = UniPoly<Integer>;

QPoly q_from_strings(const std::vector<std::string>& coeffs);
QPoly q_from_longs(const std::vector<long>& coeffs);

// content/primitive split: f = content * primitive, primitive in Z[x] with
// positive leading coefficient and coprime coefficients.
std::pair<Rational, ZPoly> content_primitive(const QPoly& f);
QPoly to_qpoly(const ZPoly& f);
Integer z_content(const ZPoly& f);

UniPoly<Fp64> reduce_mod_p(const ZPoly& f, std::uint64_t p);
UniPoly<Fp64> reduce_mod_p(const QPoly& f, std::uint64_t p);

// Complete factorization over Q via Zassenhaus (factor mod p, Hensel lift,
// bounded subset recombination).  factors are primitive integer polynomials
// with positive leading coefficient, ordered by degree then lexicographically
// by coefficients; f == content * prod factors^mult.
struct QFactorization {
    Rational content;
    std::vector<std::pair<ZPoly, unsigned>> factors;
};
QFactorization factor_rational_poly(const QPoly& f);

bool is_irreducible_q(const QPoly& f);
std::vector<Rational> rational_roots(const QPoly& f);

// Number of distinct real roots (Sturm).
int count_real_roots(const QPoly& f);
// True iff f(u) > 0 for every real u, decided exactly.
bool sturm_positive_definite(const QPoly& f);

Rational resultant_q(const QPoly& a, const QPoly& b);
Rational discriminant_q(const QPoly& f);

} // namespace tlab
