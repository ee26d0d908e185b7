#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "core/common.hpp"
#include "core/integer.hpp"

namespace tlab {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t invmod64(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw internal_error("invmod64: not invertible");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

// Element of F_p for word-sized odd or even prime p (p < 2^62).
class Fp64 {
public:
    Fp64() : v_(0), p_(0) {}
    Fp64(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {}
    static Fp64 from_integer(const Integer& n, std::uint64_t p) {
        Integer r = n.fmod(Integer(static_cast<unsigned long long>(p)));
        return Fp64(r.to_u64(), p);
    }
    static Fp64 from_rational(const Rational& q, std::uint64_t p); // throws input_error if p | den

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    bool operator==(const Fp64& o) const { return v_ == o.v_ && p_ == o.p_; }
    bool operator!=(const Fp64& o) const { return !(*this == o); }

    Fp64 zero() const { return Fp64(0, p_); }
    Fp64 one() const { return Fp64(1, p_); }
    Fp64 from_long(long k) const {
        std::int64_t r = k % static_cast<std::int64_t>(p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        return Fp64(static_cast<std::uint64_t>(r), p_);
    }

    Fp64 operator-() const { return Fp64(v_ ? p_ - v_ : 0, p_); }
    Fp64 operator+(const Fp64& o) const {
        check(o);
        std::uint64_t s = v_ + o.v_;
        if (s >= p_) s -= p_;
        return Fp64(s, p_);
    }
    Fp64 operator-(const Fp64& o) const {
        check(o);
        return Fp64(v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_, p_);
    }
    Fp64 operator*(const Fp64& o) const {
        check(o);
        return Fp64(mulmod64(v_, o.v_, p_), p_);
    }
    Fp64& operator+=(const Fp64& o) { return *this = *this + o; }
    Fp64& operator-=(const Fp64& o) { return *this = *this - o; }
    Fp64& operator*=(const Fp64& o) { return *this = *this * o; }
    Fp64 operator/(const Fp64& o) const { return *this * o.inv(); }

    Fp64 inv() const {
        if (v_ == 0) throw internal_error("Fp64: inverse of zero");
        return Fp64(invmod64(v_, p_), p_);
    }
    Fp64 pow(std::uint64_t e) const { return Fp64(powmod64(v_, e, p_), p_); }

    // Legendre symbol for odd p: -1, 0, or 1.
    int legendre() const {
        if (v_ == 0) return 0;
        std::uint64_t r = powmod64(v_, (p_ - 1) / 2, p_);
        return r == 1 ? 1 : -1;
    }

    // Tonelli-Shanks; p may be 2.  Returns the root with the smaller residue.
    std::optional<Fp64> sqrt() const;

    std::string to_string() const { return std::to_string(v_); }

private:
    void check(const Fp64& o) const {
        if (p_ != o.p_) throw internal_error("Fp64: mixed moduli");
    }
    std::uint64_t v_, p_;
};

} // namespace tlab
