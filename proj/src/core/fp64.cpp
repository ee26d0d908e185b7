#include "core/fp64.hpp"

namespace tlab {

Fp64 Fp64::from_rational(const Rational& q, std::uint64_t p) {
    Integer P(static_cast<unsigned long long>(p));
    if (q.den().fmod(P).is_zero())
        throw input_error("denominator divisible by p");
    Fp64 n = from_integer(q.num(), p);
    Fp64 d = from_integer(q.den(), p);
    return n * d.inv();
}

std::optional<Fp64> Fp64::sqrt() const {
    if (p_ == 2) return Fp64(v_, 2); // squaring is the identity on F_2
    if (v_ == 0) return zero();
    if (legendre() != 1) return std::nullopt;
    std::uint64_t root;
    if (p_ % 4 == 3) {
        root = powmod64(v_, (p_ + 1) / 4, p_);
    } else {
        // Tonelli-Shanks
        std::uint64_t q = p_ - 1;
        unsigned s = 0;
        while ((q & 1) == 0) q >>= 1, ++s;
        std::uint64_t z = 2;
        while (Fp64(z, p_).legendre() != -1) ++z;
        std::uint64_t m = s;
        std::uint64_t c = powmod64(z, q, p_);
        std::uint64_t t = powmod64(v_, q, p_);
        std::uint64_t r = powmod64(v_, (q + 1) / 2, p_);
        while (t != 1) {
            std::uint64_t i = 0, tt = t;
            while (tt != 1) { tt = mulmod64(tt, tt, p_); ++i; }
            std::uint64_t b = c;
            for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod64(b, b, p_);
            m = i;
            c = mulmod64(b, b, p_);
            t = mulmod64(t, c, p_);
            r = mulmod64(r, b, p_);
        }
        root = r;
    }
    std::uint64_t other = p_ - root;
    return Fp64(std::min(root, other), p_);
}

} // namespace tlab
