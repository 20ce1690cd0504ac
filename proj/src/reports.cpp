#include "bkr/reports.hpp"


#include "bkr/bdcor.hpp"
#include "bkr/error.hpp"
#include "bkr/multiple_comparisons.hpp"
#include "bkr/nhst.hpp"
#include "bkr/nystrom.hpp"

namespace bkr {
namespace {

Json config_json(const RunConfig& c) {
    Json j;
    j["ropi"] = c.ropi;
    j["threshold"] = c.threshold;
    j["gamma"] = c.gamma;
    j["mc_samples"] = c.n_mc;
    j["nystrom_rank"] = c.nystrom_m;
    j["permutations"] = c.n_perm;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    return j;
}

Json histogram_json(const Eigen::VectorXd& samples) {
    constexpr int kBins = 50;
    const double lo = samples.minCoeff();
    const double hi = samples.maxCoeff();
    std::vector<int> counts(kBins, 0);
    if (hi > lo) {
        const double width = (hi - lo) / kBins;
        for (Eigen::Index i = 0; i < samples.size(); ++i) {
            auto bin = static_cast<int>((samples[i] - lo) / width);
            if (bin >= kBins) bin = kBins - 1;
            if (bin < 0) bin = 0;
            counts[static_cast<std::size_t>(bin)]++;
        }
    } else {
        counts[0] = static_cast<int>(samples.size());
    }
    Json j;
    j["lo"] = lo;
    j["hi"] = hi;
    j["bins"] = kBins;
    j["counts"] = counts;
    return j;
}

struct PairInputs {
    GramMatrix kx, ky;
    FeatureMatrix phi_x, phi_y;
    bool lowrank = false;
    Eigen::Index n_used = 0;
};

PairInputs prepare_pair(const Dataset& dataset, const Schema& schema,
                        const std::string& x, const std::string& y,
                        const RunConfig& config, const RngStream& rng) {
    const Eigen::Index ix = dataset.index_of(x);
    const Eigen::Index iy = dataset.index_of(y);
    if (ix == iy) throw config_error("test needs two distinct columns");
    const auto rows = dataset.complete_rows(ix, iy);
    if (rows.size() < 3)
        throw data_error("pair (" + x + ", " + y + ") has fewer than 3 complete rows");

    const auto& col_x = dataset.columns[static_cast<std::size_t>(ix)];
    const auto& col_y = dataset.columns[static_cast<std::size_t>(iy)];
    const auto& spec_x = schema.by_name(x).kernel;
    const auto& spec_y = schema.by_name(y).kernel;

    PairInputs in;
    in.n_used = static_cast<Eigen::Index>(rows.size());
    in.lowrank = config.nystrom_m > 0 && config.nystrom_m < in.n_used;
    if (in.lowrank) {
        const ColumnKernel kx(col_x, spec_x, rows);
        const ColumnKernel ky(col_y, spec_y, rows);
        auto rng_x = rng.child(stream_tag::landmarks, 0);
        auto rng_y = rng.child(stream_tag::landmarks, 1);
        in.phi_x = nystrom_features(kx, config.nystrom_m, rng_x);
        in.phi_y = nystrom_features(ky, config.nystrom_m, rng_y);
    } else {
        in.kx = build_gram(col_x, spec_x, rows);
        in.ky = build_gram(col_y, spec_y, rows);
    }
    return in;
}

}  // namespace

Json cmd_test(const Dataset& dataset, const Schema& schema, const std::string& x,
              const std::string& y, const RunConfig& config) {
    validate(config);
    const RngStream rng(config.seed);
    const PairInputs in = prepare_pair(dataset, schema, x, y, config, rng);

    BdcorOptions opts;
    opts.threads = config.threads;
    opts.tau_budget = config.tau_budget;
    opts.label_x = x;
    opts.label_y = y;
    const PosteriorSamples ps =
        in.lowrank ? bdcor_posterior_lowrank(in.phi_x, in.phi_y, config.n_mc, rng, opts)
                   : bdcor_posterior(in.kx, in.ky, config.n_mc, rng, opts);
    const Decision d = decide(ps, config.ropi, config.threshold);

    Json out;
    out["command"] = "test";
    out["x"] = x;
    out["y"] = y;
    out["n_used"] = in.n_used;
    out["config"] = config_json(config);
    out["lowrank"] = in.lowrank;
    out["posterior_mean"] = ps.mean();
    out["tau_mean"] = ps.tau_mean;
    out["quantiles"] = {{"q025", ps.quantile(0.025)},
                        {"q50", ps.quantile(0.5)},
                        {"q975", ps.quantile(0.975)}};
    out["histogram"] = histogram_json(ps.samples);
    out["p_dependent"] = d.p_dependent;
    out["p_independent"] = d.p_independent;
    out["decision"] = to_string(d.label);
    return out;
}

Json cmd_matrix(const Dataset& dataset, const Schema& schema, const RunConfig& config,
                bool pairwise_complete) {
    validate(config);
    const RngStream rng(config.seed);

    PairwiseOptions popts;
    popts.n_mc = config.n_mc;
    popts.ropi = config.ropi;
    popts.threads = config.threads;
    popts.store_samples = false;
    popts.nystrom_m = config.nystrom_m;
    popts.tau_budget = config.tau_budget;

    const PairwiseResult result =
        pairwise_complete ? pairwise_matrix_marginal(dataset, schema, popts, rng)
                          : pairwise_matrix(dataset, schema, popts, rng);

    const auto k = result.column_names.size();
    std::vector<std::vector<double>> mean(k, std::vector<double>(k, 1.0));
    std::vector<std::vector<double>> p_dep(k, std::vector<double>(k, 1.0));
    for (const auto& cell : result.pairs) {
        const auto i = static_cast<std::size_t>(cell.i);
        const auto j = static_cast<std::size_t>(cell.j);
        mean[i][j] = mean[j][i] = cell.posterior_mean;
        p_dep[i][j] = p_dep[j][i] = cell.p_dependent;
    }

    Json out;
    out["command"] = "matrix";
    out["columns"] = result.column_names;
    out["n_rows"] = dataset.n_rows();
    out["config"] = config_json(config);
    out["mode"] = pairwise_complete ? "pairwise-complete" : "joint";
    out["posterior_mean"] = mean;
    out["p_dependent"] = p_dep;

    Json cells = Json::array();
    for (const auto& cell : result.pairs) {
        Json c;
        c["i"] = cell.i;
        c["j"] = cell.j;
        c["x"] = result.column_names[static_cast<std::size_t>(cell.i)];
        c["y"] = result.column_names[static_cast<std::size_t>(cell.j)];
        c["n_used"] = cell.n_used;
        c["posterior_mean"] = cell.posterior_mean;
        c["p_dependent"] = cell.p_dependent;
        c["tau_mean"] = cell.tau_mean;
        cells.push_back(std::move(c));
    }
    out["pairs"] = std::move(cells);

    if (!pairwise_complete) {
        const JointReport joint = joint_accept(result, config.gamma);
        Json jj;
        jj["gamma"] = joint.gamma;
        jj["joint_probability"] = joint.joint_probability;
        if (joint.next_joint_probability)
            jj["next_joint_probability"] = *joint.next_joint_probability;
        Json accepted = Json::array();
        for (const auto& stmt : joint.accepted) {
            Json s;
            s["x"] = result.column_names[static_cast<std::size_t>(stmt.i)];
            s["y"] = result.column_names[static_cast<std::size_t>(stmt.j)];
            s["direction"] = stmt.dependent ? "dependent" : "independent";
            s["marginal"] = stmt.marginal;
            accepted.push_back(std::move(s));
        }
        jj["accepted"] = std::move(accepted);
        out["joint"] = std::move(jj);
    }
    return out;
}

Json cmd_baseline(const Dataset& dataset, const Schema& schema, const std::string& x,
                  const std::string& y, const RunConfig& config) {
    validate(config);
    const Eigen::Index ix = dataset.index_of(x);
    const Eigen::Index iy = dataset.index_of(y);
    if (ix == iy) throw config_error("baseline needs two distinct columns");
    const auto rows = dataset.complete_rows(ix, iy);
    if (rows.size() < 3)
        throw data_error("pair (" + x + ", " + y + ") has fewer than 3 complete rows");

    const GramMatrix kx = build_gram(dataset.columns[static_cast<std::size_t>(ix)],
                                     schema.by_name(x).kernel, rows);
    const GramMatrix ky = build_gram(dataset.columns[static_cast<std::size_t>(iy)],
                                     schema.by_name(y).kernel, rows);
    const RngStream rng(config.seed);
    const NhstResult res =
        hsic_permutation_test(kx, ky, config.n_perm, rng, config.alpha, config.threads);

    Json out;
    out["command"] = "baseline";
    out["x"] = x;
    out["y"] = y;
    out["n_used"] = static_cast<Eigen::Index>(rows.size());
    out["config"] = config_json(config);
    out["statistic"] = res.statistic;
    out["p_value"] = res.p_value;
    out["n_permutations"] = res.n_permutations;
    out["alpha"] = res.alpha;
    out["rejected"] = res.rejected;
    return out;
}

Json cmd_benchmark(const BenchmarkSpec& spec, const RunConfig& config,
                   const ProgressFn& progress) {
    return benchmark_report(spec, config, run_benchmark(spec, config, progress));
}

Json benchmark_report(const BenchmarkSpec& spec, const RunConfig& config,
                      const std::vector<BenchmarkRow>& rows) {
    Json out;
    out["command"] = "benchmark";
    out["generator"] = spec.generator == Generator::D1 ? "d1" : "d2";
    out["n"] = spec.n;
    out["repetitions"] = spec.repetitions;
    out["config"] = config_json(config);
    Json table = Json::array();
    for (const auto& r : rows) {
        Json row;
        row["rho"] = r.rho;
        row["bkr_dep"] = r.bkr_dep;
        row["bkr_ind"] = r.bkr_ind;
        row["bkr_all"] = r.bkr_all;
        row["hsic_dep"] = r.hsic_dep;
        row["bkr_dep_correct"] = r.bkr_dep_correct;
        row["bkr_ind_correct"] = r.bkr_ind_correct;
        row["hsic_dep_correct"] = r.hsic_dep_correct;
        row["recovered_dep"] = r.recovered_dep;
        row["recovered_ind"] = r.recovered_ind;
        row["hsic_recovered_dep"] = r.hsic_recovered_dep;
        table.push_back(std::move(row));
    }
    out["rows"] = std::move(table);
    return out;
}

}  // namespace bkr
