#include "core/primes.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace tlab {

namespace {
std::mutex g_sieve_mutex;

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}
} // namespace

PrimeTable& PrimeTable::instance() {
    static PrimeTable t;
    return t;
}

void PrimeTable::ensure_limit(std::uint64_t limit) {
    std::lock_guard<std::mutex> lock(g_sieve_mutex);
    if (limit <= limit_) return;
    limit = std::max<std::uint64_t>(limit, 2 * limit_);
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t p = 2; p * p <= limit; ++p)
        if (!composite[p])
            for (std::uint64_t q = p * p; q <= limit; q += p) composite[q] = true;
    primes_.clear();
    for (std::uint64_t p = 2; p <= limit; ++p)
        if (!composite[p]) primes_.push_back(p);
    limit_ = limit;
}

void PrimeTable::ensure_count(std::size_t count) {
    // p_n < n(ln n + ln ln n) for n >= 6
    while (primes_.size() < count) {
        double n = static_cast<double>(std::max<std::size_t>(count, 6));
        auto bound = static_cast<std::uint64_t>(n * (std::log(n) + std::log(std::log(n))) + 16);
        ensure_limit(std::max(bound, limit_ + 1));
    }
}

std::uint64_t PrimeTable::nth(std::size_t n) {
    if (n == 0) throw input_error("nth_prime is 1-based");
    ensure_count(n);
    return primes_[n - 1];
}

std::vector<std::uint64_t> PrimeTable::in_open_range(std::uint64_t lo, std::uint64_t hi) {
    if (hi <= lo + 1) return {};
    ensure_limit(hi);
    auto first = std::upper_bound(primes_.begin(), primes_.end(), lo);
    auto last = std::lower_bound(primes_.begin(), primes_.end(), hi);
    return {first, last};
}

std::vector<std::uint64_t> PrimeTable::up_to(std::uint64_t bound) {
    ensure_limit(bound + 1);
    auto last = std::upper_bound(primes_.begin(), primes_.end(), bound);
    return {primes_.begin(), last};
}

bool PrimeTable::is_prime_small(std::uint64_t n) {
    ensure_limit(n);
    return std::binary_search(primes_.begin(), primes_.end(), n);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    // Deterministic witness set for 64-bit inputs (Sinclair).
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        std::uint64_t x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

bool is_prime(const Integer& n) {
    if (n.sign() <= 0) return false;
    if (n.bit_length() <= 64) return is_prime_u64(n.to_u64());
    return n.is_probable_prime();
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
    if (n == 0) throw input_error("factor_u64(0)");
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n && p < (1ULL << 21); p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) n /= p, ++e;
        out.emplace_back(p, e);
    }
    if (n > 1) {
        if (!is_prime_u64(n)) throw internal_error("factor_u64: cofactor too hard");
        out.emplace_back(n, 1);
    }
    return out;
}

bool is_smooth(const Integer& n, std::uint64_t bound) {
    if (n.sign() <= 0) throw input_error("is_smooth requires n >= 1");
    Integer m = n;
    for (std::uint64_t p : PrimeTable::instance().up_to(bound)) {
        Integer P(static_cast<unsigned long long>(p));
        while (m.divisible_by(P)) m = m.exact_div(P);
        if (m.is_one()) return true;
    }
    return m.is_one();
}

} // namespace tlab
