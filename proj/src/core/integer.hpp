#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/common.hpp"

namespace tlab {

// Arbitrary-precision signed integer, a thin value wrapper over GMP.
class Integer {
public:
    Integer() : v_(0) {}
    Integer(int x) : v_(x) {}
    Integer(long x) : v_(static_cast<signed long>(x)) {}
    Integer(unsigned long x) : v_(x) {}
    Integer(long long x) { v_ = from_ll(x); }
    Integer(unsigned long long x) { v_ = from_ull(x); }
    explicit Integer(const mpz_class& z) : v_(z) {}
    explicit Integer(const std::string& s);

    const mpz_class& raw() const { return v_; }
    mpz_class& raw() { return v_; }

    Integer operator-() const { return Integer(mpz_class(-v_)); }
    Integer operator+(const Integer& o) const { return Integer(mpz_class(v_ + o.v_)); }
    Integer operator-(const Integer& o) const { return Integer(mpz_class(v_ - o.v_)); }
    Integer operator*(const Integer& o) const { return Integer(mpz_class(v_ * o.v_)); }
    Integer& operator+=(const Integer& o) { v_ += o.v_; return *this; }
    Integer& operator-=(const Integer& o) { v_ -= o.v_; return *this; }
    Integer& operator*=(const Integer& o) { v_ *= o.v_; return *this; }

    // Truncated division and remainder (C semantics), as in mpz_tdiv.
    Integer operator/(const Integer& o) const { return Integer(mpz_class(v_ / o.v_)); }
    Integer operator%(const Integer& o) const { return Integer(mpz_class(v_ % o.v_)); }

    // Floor division/modulo; mod result is in [0, |o|).
    Integer fdiv(const Integer& o) const;
    Integer fmod(const Integer& o) const;

    // Quotient when divisibility is known; throws internal_error otherwise.
    Integer exact_div(const Integer& o) const;
    bool divisible_by(const Integer& o) const { return mpz_divisible_p(v_.get_mpz_t(), o.v_.get_mpz_t()) != 0; }

    bool operator==(const Integer& o) const { return v_ == o.v_; }
    bool operator!=(const Integer& o) const { return v_ != o.v_; }
    bool operator<(const Integer& o) const { return v_ < o.v_; }
    bool operator<=(const Integer& o) const { return v_ <= o.v_; }
    bool operator>(const Integer& o) const { return v_ > o.v_; }
    bool operator>=(const Integer& o) const { return v_ >= o.v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }
    bool odd() const { return mpz_odd_p(v_.get_mpz_t()) != 0; }
    Integer abs() const { return Integer(mpz_class(::abs(v_))); }

    Integer zero() const { return Integer(0); }
    Integer one() const { return Integer(1); }
    Integer from_long(long k) const { return Integer(k); }

    size_t bit_length() const { return mpz_sizeinbase(v_.get_mpz_t(), 2); }
    bool fits_long() const { return v_.fits_slong_p(); }
    long to_long() const;
    std::uint64_t to_u64() const;
    double to_double() const { return v_.get_d(); }

    static Integer gcd(const Integer& a, const Integer& b);
    static Integer lcm(const Integer& a, const Integer& b);
    // g = gcd(a,b) = s*a + t*b
    static Integer gcdext(const Integer& a, const Integer& b, Integer& s, Integer& t);
    static Integer pow(const Integer& base, unsigned long e);
    static Integer powmod(const Integer& base, const Integer& e, const Integer& mod);
    static Integer binomial(unsigned long n, unsigned long k);

    Integer isqrt() const; // floor square root, requires >= 0
    bool is_perfect_square() const { return mpz_perfect_square_p(v_.get_mpz_t()) != 0; }
    // Exact square root if the value is a perfect square.
    std::optional<Integer> sqrt_exact() const;

    bool is_probable_prime() const { return mpz_probab_prime_p(v_.get_mpz_t(), 30) > 0; }

    std::string to_string() const { return v_.get_str(); }

private:
    static mpz_class from_ll(long long x);
    static mpz_class from_ull(unsigned long long x);
    mpz_class v_;
};

inline Integer operator*(long a, const Integer& b) { return Integer(a) * b; }

// Exact rational number; always canonical (lowest terms, positive denominator).
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int x) : v_(x) {}
    Rational(long x) : v_(static_cast<signed long>(x)) {}
    Rational(const Integer& z) : v_(z.raw()) {}
    Rational(const Integer& num, const Integer& den);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    // Parses "n", "n/d", optionally signed.
    explicit Rational(const std::string& s);

    const mpq_class& raw() const { return v_; }

    Integer num() const { return Integer(mpz_class(v_.get_num())); }
    Integer den() const { return Integer(mpz_class(v_.get_den())); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }
    bool operator<=(const Rational& o) const { return v_ <= o.v_; }
    bool operator>(const Rational& o) const { return v_ > o.v_; }
    bool operator>=(const Rational& o) const { return v_ >= o.v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational inv() const;
    Rational zero() const { return Rational(0); }
    Rational one() const { return Rational(1); }
    Rational from_long(long k) const { return Rational(k); }
    std::optional<Rational> sqrt() const;

    double to_double() const { return v_.get_d(); }
    // "n" or "n/d"
    std::string to_string() const;

private:
    mpq_class v_;
};

inline Rational operator*(long a, const Rational& b) { return Rational(a) * b; }
inline Rational operator+(long a, const Rational& b) { return Rational(a) + b; }
inline Rational operator-(long a, const Rational& b) { return Rational(a) - b; }

} // namespace tlab
