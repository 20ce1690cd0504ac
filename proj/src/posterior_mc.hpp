#pragma once

// Internal Monte Carlo driver shared by the single-pair posteriors and the
// pairwise matrix. Centralising the stream layout here is what makes the
// exact and low-rank paths consume identical randomness, and makes a
// two-column matrix bitwise-identical to a standalone test.

#include <Eigen/Core>
#include <memory>
#include <string>
#include <vector>

#include "bkr/dp_posterior.hpp"
#include "bkr/kernels.hpp"
#include "bkr/rng.hpp"

namespace bkr::detail {

/// Minimum admissible self-HSIC; anything below means a (near-)constant
/// kernel and the normalising ratio is undefined.
inline constexpr double kSelfHsicFloor = 1e-14;

struct PairIndex {
    int a = 0;
    int b = 0;
};

/// Per-draw HSIC term provider over a fixed set of columns. begin_draw is
/// called once per iteration with that iteration's weights; term queries may
/// then be issued in any order. Implementations keep per-draw workspace, so
/// each worker thread uses its own clone.
class PosteriorEvaluator {
public:
    virtual ~PosteriorEvaluator() = default;
    virtual Eigen::Index n_rows() const = 0;
    virtual int n_columns() const = 0;
    virtual void begin_draw(const Eigen::VectorXd& w) = 0;
    virtual double self_term(int col) = 0;
    virtual double cross_term(int a, int b) = 0;
    virtual double cross_term_permuted(int a, int b, const Permutation& pi) = 0;
    virtual std::unique_ptr<PosteriorEvaluator> clone() const = 0;
};

std::unique_ptr<PosteriorEvaluator> make_exact_evaluator(
    std::vector<const Eigen::MatrixXd*> grams);

std::unique_ptr<PosteriorEvaluator> make_lowrank_evaluator(
    std::vector<const Eigen::MatrixXd*> features);

struct McSpec {
    std::vector<PairIndex> pairs;          // lexicographic order expected
    std::vector<std::string> labels;       // per column, used in error messages
    int n_mc = 0;
    int threads = 1;
    int tau_budget = 0;                    // 0 = tau coupled to the main draws
};

struct McResult {
    std::vector<Eigen::VectorXd> samples;  // per pair, length n_mc
    std::vector<double> tau_mean;          // per pair
};

McResult run_posterior_mc(const PosteriorEvaluator& prototype, const McSpec& spec,
                          const RngStream& rng);

}  // namespace bkr::detail
