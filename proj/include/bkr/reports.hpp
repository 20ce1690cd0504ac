#pragma once

#include <json.hpp>
#include <string>

#include "bkr/benchmark.hpp"
#include "bkr/column.hpp"
#include "bkr/run_config.hpp"

namespace bkr {

using Json = nlohmann::ordered_json;

/// Single-pair posterior test: posterior mean, E(tau), quantiles, a fixed
/// 50-bin histogram over the draw range, p_dependent and the ROPI decision.
/// Rows with a missing value in either column are dropped.
Json cmd_test(const Dataset& dataset, const Schema& schema, const std::string& x,
              const std::string& y, const RunConfig& config);

/// All pairwise tests with shared randomness: k x k posterior-mean and
/// p_dependent matrices plus the joint acceptance report. With
/// pairwise_complete = true each pair drops its own missing rows and no
/// joint report is produced.
Json cmd_matrix(const Dataset& dataset, const Schema& schema, const RunConfig& config,
                bool pairwise_complete = false);

/// Frequentist baseline: permutation HSIC test for one pair.
Json cmd_baseline(const Dataset& dataset, const Schema& schema, const std::string& x,
                  const std::string& y, const RunConfig& config);

/// Synthetic decision benchmark (see run_benchmark).
Json cmd_benchmark(const BenchmarkSpec& spec, const RunConfig& config,
                   const ProgressFn& progress = {});

/// JSON payload for already-computed benchmark rows.
Json benchmark_report(const BenchmarkSpec& spec, const RunConfig& config,
                      const std::vector<BenchmarkRow>& rows);

}  // namespace bkr
