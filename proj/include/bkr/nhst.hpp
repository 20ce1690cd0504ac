#pragma once

#include "bkr/kernels.hpp"
#include "bkr/rng.hpp"

namespace bkr {

/// Result of the permutation-based HSIC significance test.
struct NhstResult {
    double statistic = 0.0;   // empirical HSIC of the observed pairing
    double p_value = 1.0;     // add-one smoothed, never below 1/(n_perm+1)
    int n_permutations = 0;
    bool rejected = false;    // at the alpha passed to the test
    double alpha = 0.0;
};

/// Permutation null for the empirical HSIC: re-pair Y by a fresh uniform
/// permutation n_perm times and count replicates at least as large as the
/// observed statistic. p = (1 + #{HSIC_b >= HSIC_obs}) / (n_perm + 1).
NhstResult hsic_permutation_test(const GramMatrix& kx, const GramMatrix& ky,
                                 int n_perm, const RngStream& rng,
                                 double alpha = 0.05, int threads = 1);

/// Bonferroni-corrected significance level alpha / k.
double bonferroni(double alpha, int k);

}  // namespace bkr
