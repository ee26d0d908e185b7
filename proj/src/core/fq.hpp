#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/fp64.hpp"
#include "core/poly.hpp"

namespace tlab {

// Finite field F_q = F_p[x]/(g), g monic irreducible of degree d >= 1.
struct FqCtx {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> g; // ascending, g.size() == d+1, g.back() == 1
    unsigned d = 0;
    Integer q; // p^d

    static std::shared_ptr<const FqCtx> make(std::uint64_t p, std::vector<std::uint64_t> g);
    // F_p itself (g = x - 0 is never used; d == 1 keeps arithmetic trivial)
    static std::shared_ptr<const FqCtx> prime_field(std::uint64_t p);
    // F_{p^d} with a deterministically chosen irreducible modulus
    static std::shared_ptr<const FqCtx> extension(std::uint64_t p, unsigned d);
};

class Fq64 {
public:
    Fq64() = default;
    Fq64(std::shared_ptr<const FqCtx> F, std::vector<std::uint64_t> coeffs);
    static Fq64 from_fp(std::shared_ptr<const FqCtx> F, const Fp64& a);
    static Fq64 scalar(std::shared_ptr<const FqCtx> F, std::uint64_t v);
    static Fq64 gen(std::shared_ptr<const FqCtx> F); // the class of x

    const std::shared_ptr<const FqCtx>& ctx() const { return F_; }
    const std::vector<std::uint64_t>& coords() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool operator==(const Fq64& o) const { return c_ == o.c_; }
    bool operator!=(const Fq64& o) const { return c_ != o.c_; }

    Fq64 zero() const { return scalar(F_, 0); }
    Fq64 one() const { return scalar(F_, 1); }
    Fq64 from_long(long k) const;

    Fq64 operator-() const;
    Fq64 operator+(const Fq64& o) const;
    Fq64 operator-(const Fq64& o) const;
    Fq64 operator*(const Fq64& o) const;
    Fq64& operator+=(const Fq64& o) { return *this = *this + o; }
    Fq64& operator-=(const Fq64& o) { return *this = *this - o; }
    Fq64& operator*=(const Fq64& o) { return *this = *this * o; }
    Fq64 operator/(const Fq64& o) const { return *this * o.inv(); }

    Fq64 inv() const;
    Fq64 pow(const Integer& e) const;
    Fq64 frobenius() const { return pow(Integer(static_cast<unsigned long long>(F_->p))); }

    // Quadratic character for odd q: -1, 0, 1.
    int chi() const;
    // Square root for odd q (Tonelli-Shanks over F_q); nullopt for non-squares.
    std::optional<Fq64> sqrt() const;
    // Absolute trace to F_p.
    Fp64 trace() const;

    // Enumeration of the field in a fixed order (base-p digit order).
    static Fq64 from_index(std::shared_ptr<const FqCtx> F, std::uint64_t idx);
    std::uint64_t to_index() const;

    std::string to_string() const;

private:
    void check(const Fq64& o) const {
        if (F_.get() != o.F_.get()) throw internal_error("Fq64: mixed fields");
    }
    std::shared_ptr<const FqCtx> F_;
    std::vector<std::uint64_t> c_; // length d, ascending
};

// Deterministic irreducible monic polynomial of degree d over F_p.
std::vector<std::uint64_t> find_irreducible_mod_p(std::uint64_t p, unsigned d);

} // namespace tlab
