#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "bkr/bdcor.hpp"
#include "bkr/column.hpp"
#include "bkr/rng.hpp"

namespace bkr {

/// One per-pair cell of the pairwise analysis.
struct PairCell {
    int i = 0;
    int j = 0;                     // i < j, column indices
    double posterior_mean = 0.0;   // NaN when undecided for lack of data
    double p_dependent = 0.0;
    double tau_mean = 0.0;
    Eigen::Index n_used = 0;       // rows entering this pair's test
    /// Per-iteration indicator of (BdCor_t > ropi); empty when the pair was
    /// skipped (marginal mode with too few complete rows).
    std::vector<std::uint8_t> exceeds_ropi;
    /// Full draws; kept when store_samples was requested.
    Eigen::VectorXd samples;
};

/// All pairwise posteriors of a dataset. shared_streams marks that one
/// weight vector per iteration was reused across every pair, which is what
/// makes joint probabilities over the cells meaningful.
struct PairwiseResult {
    std::vector<std::string> column_names;
    std::vector<PairCell> pairs;   // lexicographic (i, j) order
    int n_mc = 0;
    double ropi = 0.0;
    bool shared_streams = false;
};

/// One accepted (or candidate) statement of the joint procedure.
struct PairStatement {
    int i = 0;
    int j = 0;
    bool dependent = false;        // direction: BdCor > ROPI vs BdCor <= ROPI
    double marginal = 0.0;         // posterior probability of the direction
};

/// Output of the joint acceptance procedure: the longest prefix of the
/// sorted statements whose joint posterior probability stays above gamma.
struct JointReport {
    std::vector<PairStatement> accepted;
    double joint_probability = 1.0;  // of the accepted prefix (1 when empty)
    double gamma = 0.0;
    /// Joint probability if the first rejected statement were appended;
    /// empty when every statement was accepted.
    std::optional<double> next_joint_probability;
};

struct PairwiseOptions {
    int n_mc = 1000;
    double ropi = 0.025;
    int threads = 1;
    bool store_samples = true;
    /// 0 disables the low-rank path; otherwise columns with more than m rows
    /// are approximated with m-landmark Nystrom features.
    Eigen::Index nystrom_m = 0;
    int tau_budget = 0;
};

/// Run every pairwise test with shared posterior randomness: iteration t
/// draws one weight vector reused by all k(k-1)/2 pairs, while permutations
/// are drawn per pair. Requires complete data (no missing cells).
PairwiseResult pairwise_matrix(const Dataset& dataset, const Schema& schema,
                               const PairwiseOptions& opts, const RngStream& rng);

/// Gram-level entry point (exact path) for callers that already built the
/// per-column Gram matrices. nystrom_m in `opts` is ignored here.
PairwiseResult pairwise_matrix(const std::vector<GramMatrix>& grams,
                               const std::vector<std::string>& names,
                               const PairwiseOptions& opts, const RngStream& rng);

/// Pairwise-complete variant: each pair drops its own missing rows and runs
/// standalone. Pairs with fewer than 3 complete rows are reported undecided
/// (p_dependent = 0.5). The output cannot be fed to joint_accept.
PairwiseResult pairwise_matrix_marginal(const Dataset& dataset, const Schema& schema,
                                        const PairwiseOptions& opts,
                                        const RngStream& rng);

/// The joint acceptance procedure: pick each pair's majority direction, sort
/// statements by marginal probability (ties by (i, j)), and accept the
/// longest prefix whose exact joint frequency across iterations exceeds
/// gamma.
JointReport joint_accept(const PairwiseResult& result, double gamma);

}  // namespace bkr
