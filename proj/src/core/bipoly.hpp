#pragma once

#include "core/qpoly.hpp"

namespace tlab {

// Bivariate polynomials over Q, stored as polynomials in t with coefficients
// in Q[s], plus the fraction field used by the symbolic curve arithmetic.
using BiPoly = UniPoly<QPoly>;

BiPoly bipoly_zero();
BiPoly bipoly_const(const Rational& c);
BiPoly bipoly_s();
BiPoly bipoly_t();
// rows[i] = ascending s-coefficients of the t^i coefficient
BiPoly bipoly_from_rows(const std::vector<std::vector<long>>& rows);

long degree_t(const BiPoly& f);
long degree_s(const BiPoly& f);
Rational bipoly_eval(const BiPoly& f, const Rational& s, const Rational& t);

// content (monic gcd in Q[s] of the coefficients) and the rational-primitive
// normalization (integer coefficients, positive leading term)
QPoly bipoly_content(const BiPoly& f);
BiPoly bipoly_primitive(const BiPoly& f);

BiPoly bipoly_gcd(const BiPoly& a, const BiPoly& b);
std::optional<BiPoly> bipoly_try_exact_div(const BiPoly& a, const BiPoly& b);

// f = c * g for a rational constant c?
bool bipoly_proportional(const BiPoly& f, const BiPoly& g);

// Fraction num/den of bivariate polynomials, reduced by gcd after each
// operation; satisfies the ring-element interface used by ECurve.
class BiRat {
public:
    BiRat() : num_(bipoly_zero()), den_(bipoly_const(Rational(1))) {}
    explicit BiRat(BiPoly n) : num_(std::move(n)), den_(bipoly_const(Rational(1))) {}
    BiRat(BiPoly n, BiPoly d);

    const BiPoly& num() const { return num_; }
    const BiPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }
    bool operator==(const BiRat& o) const { return (num_ * o.den_) == (o.num_ * den_); }
    bool operator!=(const BiRat& o) const { return !(*this == o); }

    BiRat zero() const { return BiRat(); }
    BiRat one() const { return BiRat(bipoly_const(Rational(1))); }
    BiRat from_long(long k) const { return BiRat(bipoly_const(Rational(k))); }

    BiRat operator-() const;
    BiRat operator+(const BiRat& o) const;
    BiRat operator-(const BiRat& o) const;
    BiRat operator*(const BiRat& o) const;
    BiRat& operator+=(const BiRat& o) { return *this = *this + o; }
    BiRat& operator-=(const BiRat& o) { return *this = *this - o; }
    BiRat& operator*=(const BiRat& o) { return *this = *this * o; }
    BiRat operator/(const BiRat& o) const { return *this * o.inv(); }
    BiRat inv() const;

    std::string to_string() const;

private:
    void reduce();
    BiPoly num_, den_;
};

} // namespace tlab
