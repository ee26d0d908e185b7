#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tlab {

// Error taxonomy mirrored by the C API status codes: input errors are the
// caller's fault, verify errors mean a mathematical check failed, internal
// errors are bugs or unsupported territory.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct verify_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct internal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic 64-bit PRNG (splitmix64).  All randomized routines in the
// library draw from an explicitly seeded instance so results are stable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), n > 0
    std::uint64_t below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

} // namespace tlab
