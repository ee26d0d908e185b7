#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/integer.hpp"

namespace tlab {

// Uniform operation result: exit status (0 pass, 1 verification failure,
// 2 input error), human-readable text, machine-readable JSON sidecar.
struct OpResult {
    int status = 0;
    std::string text;
    std::string json;
};

// Task-level entry points behind the C API.  All operations are
// deterministic; jobs only changes the work partitioning.
class Engine {
public:
    explicit Engine(std::string data_dir);

    const std::string& data_dir() const { return data_dir_; }
    void set_jobs(unsigned jobs) { jobs_ = std::max(1u, jobs); }
    unsigned jobs() const { return jobs_; }

    OpResult verify_tables(const std::vector<unsigned>& tables) const;
    OpResult zeta(const std::string& curve, std::optional<std::uint64_t> p) const;
    OpResult zeta_synthetic(std::uint64_t n1, std::uint64_t n2, std::uint64_t q) const;
    OpResult family(unsigned n, const std::string& c_rational, bool verify) const;
    OpResult false_cm(unsigned n, const std::string& c_or_curve, unsigned samples) const;
    OpResult smoothness(const std::vector<std::string>& curves, std::size_t hi_index,
                        const std::vector<std::uint64_t>& bounds) const;
    OpResult densities(const std::string& curve, std::size_t hi_index) const;
    OpResult ecm(const std::string& n_decimal, std::uint64_t b1, const std::string& curve_spec) const;
    OpResult ecm_demo() const;
    OpResult selftest() const;

private:
    std::string data_dir_;
    unsigned jobs_ = 1;
};

} // namespace tlab
