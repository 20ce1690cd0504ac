#pragma once

#include <Eigen/Core>
#include <string>

#include "bkr/kernels.hpp"
#include "bkr/nystrom.hpp"
#include "bkr/rng.hpp"

namespace bkr {

/// Monte Carlo posterior of BdCor for one variable pair: the draws, the
/// estimated exchangeability correction E(tau), and the draw count.
struct PosteriorSamples {
    Eigen::VectorXd samples;  // length n_mc
    double tau_mean = 0.0;    // E(tau), in [0, 1)
    int n_mc = 0;

    double mean() const { return samples.mean(); }
    /// Type-7 quantile (linear interpolation) of the draws.
    double quantile(double p) const;
};

enum class DecisionLabel { Dependent, Independent, Undecided };

/// ROPI decision for one pair: p_dependent = P(BdCor > ropi | data).
struct Decision {
    DecisionLabel label = DecisionLabel::Undecided;
    double p_dependent = 0.0;
    double p_independent = 1.0;
    double ropi = 0.0;
    double threshold = 0.0;
};

const char* to_string(DecisionLabel label);

/// Tuning knobs for the posterior sampler beyond the draw count.
struct BdcorOptions {
    int threads = 1;
    /// When positive, E(tau) is estimated from this many dedicated
    /// weight/permutation draws instead of being coupled to the main
    /// iterations.
    int tau_budget = 0;
    std::string label_x = "X";
    std::string label_y = "Y";
};

/// Sample the BdCor posterior for the pair (Kx, Ky): per iteration draw
/// Dirichlet weights W, evaluate the normalised posterior HSIC ratio
/// V = hsic(Kx,Ky,W) / sqrt(hsic(Kx,Kx,W) hsic(Ky,Ky,W)), draw one
/// permutation pi and the matching null ratio tau using the same W and
/// denominator, then recentre: sample = (V - E(tau)) / (1 - E(tau)).
PosteriorSamples bdcor_posterior(const GramMatrix& kx, const GramMatrix& ky, int n_mc,
                                 const RngStream& rng, const BdcorOptions& opts = {});

/// Low-rank variant: identical stream layout and estimator with every HSIC
/// term evaluated through the feature matrices (the permuted term permutes
/// feature rows). With exact-rank features it reproduces the exact path
/// draw by draw.
PosteriorSamples bdcor_posterior_lowrank(const FeatureMatrix& phi_x,
                                         const FeatureMatrix& phi_y, int n_mc,
                                         const RngStream& rng,
                                         const BdcorOptions& opts = {});

/// Convert posterior draws into a ROPI decision: p_dependent is the fraction
/// of draws strictly above ropi; the label requires the majority probability
/// to exceed `threshold` (otherwise Undecided).
Decision decide(const PosteriorSamples& samples, double ropi, double threshold);

}  // namespace bkr
