#include "bkr/benchmark.hpp"

#include <filesystem>
#include <limits>
#include <sstream>

#include "bkr/dataset_io.hpp"
#include "bkr/error.hpp"
#include "bkr/multiple_comparisons.hpp"
#include "bkr/nhst.hpp"
#include "bkr/synthetic.hpp"

namespace bkr {

void validate(const RunConfig& config) {
    if (!(config.ropi >= 0.0 && config.ropi <= 1.0))
        throw config_error("ropi must lie in [0, 1]");
    if (!(config.threshold > 0.5 && config.threshold < 1.0))
        throw config_error("threshold must lie in (0.5, 1)");
    if (!(config.gamma > 0.0 && config.gamma < 1.0))
        throw config_error("gamma must lie in (0, 1)");
    if (config.n_mc < 1) throw config_error("mc-samples must be at least 1");
    if (config.nystrom_m < 0) throw config_error("nystrom-rank must be nonnegative");
    if (config.n_perm < 1) throw config_error("permutations must be at least 1");
    if (!(config.alpha > 0.0 && config.alpha < 1.0))
        throw config_error("alpha must lie in (0, 1)");
    if (config.threads < 1) throw config_error("threads must be at least 1");
    if (config.tau_budget < 0) throw config_error("tau-budget must be nonnegative");
}

Generator parse_generator(const std::string& name) {
    if (name == "d1") return Generator::D1;
    if (name == "d2") return Generator::D2;
    throw config_error("unknown generator '" + name + "' (expected d1 or d2)");
}

std::vector<BenchmarkRow> run_benchmark(const BenchmarkSpec& spec,
                                        const RunConfig& config,
                                        const ProgressFn& progress) {
    validate(config);
    if (spec.rhos.empty()) throw config_error("benchmark: empty rho grid");
    if (spec.repetitions < 1) throw config_error("benchmark: repetitions must be >= 1");
    if (spec.n < 3) throw config_error("benchmark: n must be at least 3");

    const RngStream root(config.seed);
    const double alpha_corrected = bonferroni(config.alpha, kSyntheticPairs);

    std::vector<BenchmarkRow> rows;
    rows.reserve(spec.rhos.size());

    for (std::size_t rho_idx = 0; rho_idx < spec.rhos.size(); ++rho_idx) {
        const double rho = spec.rhos[rho_idx];
        BenchmarkRow row;
        row.rho = rho;
        row.repetitions = spec.repetitions;

        int truth_dep = 0;
        for (int rep = 0; rep < spec.repetitions; ++rep) {
            const auto rep_rng = root.child(stream_tag::benchmark,
                                            static_cast<std::uint64_t>(rho_idx))
                                     .child(stream_tag::benchmark,
                                            static_cast<std::uint64_t>(rep));
            auto gen_rng = rep_rng.child(stream_tag::synthetic, 0);
            const SyntheticData data =
                spec.generator == Generator::D1
                    ? generate_d1(spec.n, CopulaParam(rho), gen_rng)
                    : generate_d2(spec.n, CopulaParam(rho), gen_rng);
            truth_dep = data.truth.n_dependent();

            if (spec.emit_dir && rep == 0) {
                namespace fs = std::filesystem;
                fs::create_directories(*spec.emit_dir);
                std::ostringstream name;
                name << (spec.generator == Generator::D1 ? "d1" : "d2") << "_rho" << rho
                     << ".csv";
                write_dataset_csv(data.dataset, (fs::path(*spec.emit_dir) / name.str()).string());
                write_schema(data.schema,
                             (fs::path(*spec.emit_dir) / "schema.json").string());
            }

            std::vector<GramMatrix> grams;
            std::vector<std::string> names;
            for (std::size_t c = 0; c < data.dataset.columns.size(); ++c) {
                grams.push_back(build_gram(data.dataset.columns[c],
                                           data.schema.columns[c].kernel));
                names.push_back(data.dataset.columns[c].name);
            }

            PairwiseOptions popts;
            popts.n_mc = config.n_mc;
            popts.ropi = config.ropi;
            popts.threads = config.threads;
            popts.store_samples = false;
            popts.tau_budget = config.tau_budget;
            const PairwiseResult matrix =
                pairwise_matrix(grams, names, popts, rep_rng.child(stream_tag::benchmark, 1));
            const JointReport joint = joint_accept(matrix, config.gamma);

            for (const auto& stmt : joint.accepted) {
                const bool truly_dep = data.truth.pair(stmt.i, stmt.j);
                if (stmt.dependent) {
                    row.bkr_dep += 1.0;
                    if (truly_dep) row.bkr_dep_correct += 1.0;
                } else {
                    row.bkr_ind += 1.0;
                    if (!truly_dep) row.bkr_ind_correct += 1.0;
                }
            }

            const auto nhst_rng = rep_rng.child(stream_tag::benchmark, 2);
            std::size_t pair_rank = 0;
            for (int i = 0; i < kSyntheticColumns; ++i) {
                for (int j = i + 1; j < kSyntheticColumns; ++j, ++pair_rank) {
                    auto pair_rng = nhst_rng.child(stream_tag::pair,
                                                   static_cast<std::uint64_t>(pair_rank));
                    const NhstResult res = hsic_permutation_test(
                        grams[static_cast<std::size_t>(i)],
                        grams[static_cast<std::size_t>(j)], config.n_perm, pair_rng,
                        alpha_corrected, config.threads);
                    if (res.rejected) {
                        row.hsic_dep += 1.0;
                        if (data.truth.pair(i, j)) row.hsic_dep_correct += 1.0;
                    }
                }
            }

            if (progress) {
                std::ostringstream msg;
                msg << "rho=" << rho << " rep=" << (rep + 1) << "/" << spec.repetitions;
                progress(msg.str());
            }
        }

        const double reps = static_cast<double>(spec.repetitions);
        row.bkr_dep /= reps;
        row.bkr_ind /= reps;
        row.bkr_all = row.bkr_dep + row.bkr_ind;
        row.hsic_dep /= reps;
        row.bkr_dep_correct /= reps;
        row.bkr_ind_correct /= reps;
        row.hsic_dep_correct /= reps;

        const int truth_ind = kSyntheticPairs - truth_dep;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.recovered_dep =
            truth_dep > 0 ? row.bkr_dep_correct / static_cast<double>(truth_dep) : nan;
        row.recovered_ind =
            truth_ind > 0 ? row.bkr_ind_correct / static_cast<double>(truth_ind) : nan;
        row.hsic_recovered_dep =
            truth_dep > 0 ? row.hsic_dep_correct / static_cast<double>(truth_dep) : nan;
        rows.push_back(row);
    }
    return rows;
}

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows) {
    std::ostringstream out;
    out << "rho,repetitions,bkr_dep,bkr_ind,bkr_all,hsic_dep,bkr_dep_correct,"
           "bkr_ind_correct,hsic_dep_correct,recovered_dep,recovered_ind,"
           "hsic_recovered_dep\n";
    out.precision(12);
    for (const auto& r : rows) {
        out << r.rho << ',' << r.repetitions << ',' << r.bkr_dep << ',' << r.bkr_ind
            << ',' << r.bkr_all << ',' << r.hsic_dep << ',' << r.bkr_dep_correct << ','
            << r.bkr_ind_correct << ',' << r.hsic_dep_correct << ',' << r.recovered_dep
            << ',' << r.recovered_ind << ',' << r.hsic_recovered_dep << '\n';
    }
    return out.str();
}

}  // namespace bkr
