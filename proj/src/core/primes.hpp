#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/integer.hpp"

namespace tlab {

// Shared Eratosthenes sieve.  The table grows on demand and is kept for the
// lifetime of the process; all callers see a consistent prime sequence.
class PrimeTable {
public:
    static PrimeTable& instance();

    // 1-based: nth(1) == 2.
    std::uint64_t nth(std::size_t n);
    // primes p with lo < p < hi (strict on both sides)
    std::vector<std::uint64_t> in_open_range(std::uint64_t lo, std::uint64_t hi);
    // primes p <= bound
    std::vector<std::uint64_t> up_to(std::uint64_t bound);
    bool is_prime_small(std::uint64_t n); // n must be <= limit after ensure
    void ensure_limit(std::uint64_t limit);
    void ensure_count(std::size_t count);

private:
    PrimeTable() { ensure_limit(1 << 16); }
    std::vector<std::uint64_t> primes_;
    std::uint64_t limit_ = 0;
};

bool is_prime_u64(std::uint64_t n); // deterministic Miller-Rabin
bool is_prime(const Integer& n);

// Prime factorization n = prod p^e by trial division (+ Miller-Rabin cutoff
// for a large prime cofactor).  Intended for n up to ~2^64.
std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n);

// True iff every prime factor of n is <= bound.  n >= 1.
bool is_smooth(const Integer& n, std::uint64_t bound);

} // namespace tlab
