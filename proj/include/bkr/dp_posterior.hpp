#pragma once

#include <Eigen/Core>
#include <vector>

#include "bkr/rng.hpp"

namespace bkr {

/// One draw from the limiting Dirichlet-process posterior over the n
/// observed atoms: nonnegative weights summing to one.
struct WeightVector {
    Eigen::VectorXd w;

    Eigen::Index size() const { return w.size(); }
};

/// A bijection of {0, ..., n-1} (zero-based indexing).
using Permutation = std::vector<Eigen::Index>;

/// Flat-Dirichlet draw over n atoms: n unit-rate exponentials normalised by
/// their sum. This is the s -> 0 limit of Dir(s, 1, ..., 1), so the draw has
/// no prior component.
WeightVector sample_weights(Eigen::Index n, RngStream& rng);

/// Uniform random permutation of {0, ..., n-1} (Fisher-Yates).
Permutation sample_permutation(Eigen::Index n, RngStream& rng);

}  // namespace bkr
