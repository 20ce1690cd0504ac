#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bkr/run_config.hpp"

namespace bkr {

enum class Generator { D1, D2 };

Generator parse_generator(const std::string& name);

/// Aggregated decision counts for one coupling strength, averaged over the
/// repetitions. Counts follow the joint acceptance procedure for BKR and the
/// Bonferroni-corrected permutation test for the HSIC arm; recovered_*
/// fractions compare decisions against the generator's ground truth (NaN
/// when the truth has no pairs of that kind).
struct BenchmarkRow {
    double rho = 0.0;
    int repetitions = 0;
    double bkr_dep = 0.0;
    double bkr_ind = 0.0;
    double bkr_all = 0.0;
    double hsic_dep = 0.0;
    double bkr_dep_correct = 0.0;
    double bkr_ind_correct = 0.0;
    double hsic_dep_correct = 0.0;
    double recovered_dep = 0.0;
    double recovered_ind = 0.0;
    double hsic_recovered_dep = 0.0;
};

struct BenchmarkSpec {
    Generator generator = Generator::D1;
    Eigen::Index n = 100;
    std::vector<double> rhos;
    int repetitions = 100;
    /// When set, the first repetition of each rho is written there as
    /// CSV + schema for replay.
    std::optional<std::string> emit_dir;
};

using ProgressFn = std::function<void(const std::string&)>;

/// Run the synthetic decision benchmark: for each rho and repetition,
/// generate a dataset, run the pairwise BKR matrix with the joint acceptance
/// procedure, run the Bonferroni-corrected HSIC permutation test on every
/// pair, and tally decisions against the ground truth.
std::vector<BenchmarkRow> run_benchmark(const BenchmarkSpec& spec,
                                        const RunConfig& config,
                                        const ProgressFn& progress = {});

/// The benchmark table as CSV text (one row per rho).
std::string benchmark_csv(const std::vector<BenchmarkRow>& rows);

}  // namespace bkr
