#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace bkr {

/// Shared configuration of the test, matrix, benchmark and baseline flows.
struct RunConfig {
    double ropi = 0.025;
    double threshold = 0.85;
    double gamma = 0.9;
    int n_mc = 1000;
    /// Nystrom landmark count; columns with more rows than this go through
    /// the low-rank path. 0 forces the exact path everywhere.
    Eigen::Index nystrom_m = 128;
    int n_perm = 500;
    double alpha = 0.05;  // NHST base level before any correction
    std::uint64_t seed = 0;
    int threads = 1;
    /// Decoupled tau estimation budget; 0 keeps the correction coupled to
    /// the main draws (one permutation per iteration).
    int tau_budget = 0;
};

/// Throws config_error when any field is out of range.
void validate(const RunConfig& config);

}  // namespace bkr
