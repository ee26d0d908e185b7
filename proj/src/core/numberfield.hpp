#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/fq.hpp"
#include "core/qpoly.hpp"

namespace tlab {

// K = Q[x]/(f), f monic irreducible of degree n (certified at construction).
struct NumberFieldData {
    QPoly f;
    unsigned degree = 0;
    Rational disc; // discriminant of f, not of the maximal order
    std::string label;
};
using NumberField = std::shared_ptr<const NumberFieldData>;

NumberField make_number_field(const QPoly& f, const std::string& label = "");
NumberField quadratic_field(const Integer& d);
NumberField rationals(); // degree-1 field Q[x]/(x)
// Q(sqrt(d1), sqrt(d2)) presented by the minimal polynomial of sqrt(d1)+sqrt(d2).
NumberField compositum_quadratics(const Integer& d1, const Integer& d2);

class NFElem {
public:
    NFElem() = default;
    NFElem(NumberField K, std::vector<Rational> coords);
    static NFElem from_rational(const NumberField& K, const Rational& r);
    static NFElem gen(const NumberField& K); // w, the class of x

    const NumberField& field() const { return K_; }
    const std::vector<Rational>& coords() const { return c_; }
    Rational coord(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rational rational_value() const; // requires is_rational()
    bool operator==(const NFElem& o) const;
    bool operator!=(const NFElem& o) const { return !(*this == o); }

    NFElem zero() const { return from_rational(K_, Rational(0)); }
    NFElem one() const { return from_rational(K_, Rational(1)); }
    NFElem from_long(long k) const { return from_rational(K_, Rational(k)); }

    NFElem operator-() const;
    NFElem operator+(const NFElem& o) const;
    NFElem operator-(const NFElem& o) const;
    NFElem operator*(const NFElem& o) const;
    NFElem& operator+=(const NFElem& o) { return *this = *this + o; }
    NFElem& operator-=(const NFElem& o) { return *this = *this - o; }
    NFElem& operator*=(const NFElem& o) { return *this = *this * o; }
    NFElem operator/(const NFElem& o) const { return *this * o.inv(); }
    NFElem inv() const;

    NFElem scaled(const Rational& r) const;
    std::optional<NFElem> sqrt() const; // sqrt in K, if any

    QPoly as_poly() const; // representative polynomial in w
    std::string to_string() const;

private:
    void check(const NFElem& o) const {
        if (K_.get() != o.K_.get()) throw internal_error("NFElem: mixed fields");
    }
    NumberField K_;
    std::vector<Rational> c_;
};

// sigma: w -> image, with f(image) = 0; applies coefficientwise.
struct FieldAutomorphism {
    NFElem image_of_gen;
    bool is_identity() const;
    NFElem operator()(const NFElem& a) const;
};

// All automorphisms of K/Q (i.e. roots of f in K); the identity is first.
std::vector<FieldAutomorphism> automorphisms(const NumberField& K);

// Quadratic subfields of a quartic field, each as (subfield, image of its
// generator in K).  Generic quartics (trivial automorphism group) yield none.
std::vector<std::pair<NumberField, NFElem>> quadratic_subfields(const NumberField& K);

// Prime layer: one slot per irreducible factor of f mod p.
struct PrimeSlot {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> g; // monic irreducible factor of f mod p
    unsigned degree = 0;
    bool index_risk = false; // p divides disc(f) or a denominator of f
    std::shared_ptr<const FqCtx> residue_field;
};

std::vector<PrimeSlot> split_prime(const NumberField& K, std::uint64_t p);

// Image of alpha in the residue field of the slot; throws input_error when a
// coefficient denominator is divisible by p.
Fq64 reduce_nf(const NFElem& alpha, const PrimeSlot& slot);
// Degree-1 slots only: image in F_p.
Fp64 reduce_nf_fp(const NFElem& alpha, const PrimeSlot& slot);

// Trager's method: factorization over K via squarefree norms.
std::vector<std::pair<UniPoly<NFElem>, unsigned>> factor_over_K(const UniPoly<NFElem>& h);
std::vector<NFElem> roots_in_K(const UniPoly<NFElem>& h);

std::optional<NFElem> sqrt_in_K(const NFElem& d);

// Minimal polynomial of alpha over Q.
QPoly minimal_poly(const NFElem& alpha);

UniPoly<NFElem> to_K_poly(const NumberField& K, const QPoly& f);

} // namespace tlab
