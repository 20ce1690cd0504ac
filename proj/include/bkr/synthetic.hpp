#pragma once

#include <array>
#include <string>

#include "bkr/column.hpp"
#include "bkr/rng.hpp"

namespace bkr {

/// Number of variables in the benchmark template and the pair count.
inline constexpr int kSyntheticColumns = 6;
inline constexpr int kSyntheticPairs = 15;

/// Ground-truth dependence labels over the 15 variable pairs of the
/// six-column benchmark template, keyed in lexicographic (i, j) order.
struct SyntheticTruth {
    std::array<bool, kSyntheticPairs> dependent{};

    int n_dependent() const;
    bool pair(int i, int j) const;
};

/// Coupling strength; 0 means full independence. For the Clayton template it
/// is interpreted as a Kendall's-tau target via theta = 2 rho / (1 - rho).
struct CopulaParam {
    double rho;

    explicit CopulaParam(double r);
};

struct SyntheticData {
    Dataset dataset;
    Schema schema;
    SyntheticTruth truth;
};

/// Six-variable Gaussian-copula benchmark: a latent standard normal drives a
/// continuous copy, a thresholded binary, and a 1024-dimensional column,
/// while an independent latent drives two binary variables.
SyntheticData generate_d1(Eigen::Index n, CopulaParam rho, RngStream& rng);

/// Same template with every Gaussian coupling replaced by a Clayton copula
/// (conditional-inversion sampler); rho in (0, 1) strictly.
SyntheticData generate_d2(Eigen::Index n, CopulaParam rho, RngStream& rng);

/// Truth labels as a pure function of the template (shared by D1 and D2).
SyntheticTruth synthetic_truth(double rho);

/// Conditional-inversion draw from the Clayton copula: the conditional
/// quantile of V given U = u at level w, theta > 0. Stable for large theta.
double clayton_conditional(double u, double w, double theta);

}  // namespace bkr
