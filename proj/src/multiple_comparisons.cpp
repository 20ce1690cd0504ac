#include "bkr/multiple_comparisons.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bkr/error.hpp"
#include "bkr/nystrom.hpp"
#include "posterior_mc.hpp"

namespace bkr {
namespace {

void validate_schema(const Dataset& dataset, const Schema& schema) {
    if (dataset.columns.size() != schema.columns.size())
        throw config_error("pairwise_matrix: schema and dataset column counts differ");
    for (std::size_t c = 0; c < dataset.columns.size(); ++c)
        if (dataset.columns[c].name != schema.columns[c].name)
            throw config_error("pairwise_matrix: schema and dataset column names differ");
}

std::vector<detail::PairIndex> all_pairs(int k) {
    std::vector<detail::PairIndex> pairs;
    pairs.reserve(static_cast<std::size_t>(k) * (static_cast<std::size_t>(k) - 1) / 2);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) pairs.push_back({i, j});
    return pairs;
}

PairCell make_cell(int i, int j, Eigen::VectorXd samples, double tau_mean,
                   Eigen::Index n_used, double ropi, bool store_samples) {
    PairCell cell;
    cell.i = i;
    cell.j = j;
    cell.tau_mean = tau_mean;
    cell.n_used = n_used;
    cell.posterior_mean = samples.mean();
    cell.exceeds_ropi.resize(static_cast<std::size_t>(samples.size()));
    Eigen::Index above = 0;
    for (Eigen::Index t = 0; t < samples.size(); ++t) {
        const bool over = samples[t] > ropi;
        cell.exceeds_ropi[static_cast<std::size_t>(t)] = over ? 1 : 0;
        if (over) ++above;
    }
    cell.p_dependent = static_cast<double>(above) / static_cast<double>(samples.size());
    if (store_samples) cell.samples = std::move(samples);
    return cell;
}

}  // namespace

namespace {

PairwiseResult run_shared(const detail::PosteriorEvaluator& eval,
                          const std::vector<std::string>& names,
                          const PairwiseOptions& opts, const RngStream& rng) {
    const int k = static_cast<int>(names.size());
    detail::McSpec spec;
    spec.pairs = all_pairs(k);
    spec.n_mc = opts.n_mc;
    spec.threads = opts.threads;
    spec.tau_budget = opts.tau_budget;
    spec.labels = names;

    detail::McResult mc = detail::run_posterior_mc(eval, spec, rng);

    PairwiseResult out;
    out.column_names = names;
    out.n_mc = opts.n_mc;
    out.ropi = opts.ropi;
    out.shared_streams = true;
    out.pairs.reserve(spec.pairs.size());
    for (std::size_t p = 0; p < spec.pairs.size(); ++p)
        out.pairs.push_back(make_cell(spec.pairs[p].a, spec.pairs[p].b,
                                      std::move(mc.samples[p]), mc.tau_mean[p],
                                      eval.n_rows(), opts.ropi, opts.store_samples));
    return out;
}

}  // namespace

PairwiseResult pairwise_matrix(const Dataset& dataset, const Schema& schema,
                               const PairwiseOptions& opts, const RngStream& rng) {
    validate_schema(dataset, schema);
    const int k = static_cast<int>(dataset.columns.size());
    if (k < 2) throw config_error("pairwise_matrix: need at least two columns");
    for (const auto& col : dataset.columns)
        if (col.has_missing())
            throw data_error("pairwise_matrix: column '" + col.name +
                             "' has missing values (joint mode needs complete cases)");

    const Eigen::Index n = dataset.n_rows();
    const bool lowrank = opts.nystrom_m > 0 && opts.nystrom_m < n;
    std::vector<std::string> names;
    for (const auto& col : dataset.columns) names.push_back(col.name);

    if (lowrank) {
        std::vector<FeatureMatrix> features;
        features.reserve(static_cast<std::size_t>(k));
        std::vector<const Eigen::MatrixXd*> ptrs;
        for (int c = 0; c < k; ++c) {
            const ColumnKernel kernel(dataset.columns[static_cast<std::size_t>(c)],
                                      schema.columns[static_cast<std::size_t>(c)].kernel);
            auto lm_rng = rng.child(stream_tag::landmarks, static_cast<std::uint64_t>(c));
            features.push_back(nystrom_features(kernel, opts.nystrom_m, lm_rng));
        }
        for (const auto& f : features) ptrs.push_back(&f.phi);
        const auto eval = detail::make_lowrank_evaluator(std::move(ptrs));
        return run_shared(*eval, names, opts, rng);
    }

    std::vector<GramMatrix> grams;
    grams.reserve(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c)
        grams.push_back(build_gram(dataset.columns[static_cast<std::size_t>(c)],
                                   schema.columns[static_cast<std::size_t>(c)].kernel));
    return pairwise_matrix(grams, names, opts, rng);
}

PairwiseResult pairwise_matrix(const std::vector<GramMatrix>& grams,
                               const std::vector<std::string>& names,
                               const PairwiseOptions& opts, const RngStream& rng) {
    if (grams.size() < 2) throw config_error("pairwise_matrix: need at least two columns");
    if (grams.size() != names.size())
        throw config_error("pairwise_matrix: one name per Gram matrix required");
    std::vector<const Eigen::MatrixXd*> ptrs;
    for (const auto& g : grams) ptrs.push_back(&g.mat());
    const auto eval = detail::make_exact_evaluator(std::move(ptrs));
    return run_shared(*eval, names, opts, rng);
}

PairwiseResult pairwise_matrix_marginal(const Dataset& dataset, const Schema& schema,
                                        const PairwiseOptions& opts,
                                        const RngStream& rng) {
    validate_schema(dataset, schema);
    const int k = static_cast<int>(dataset.columns.size());
    if (k < 2) throw config_error("pairwise_matrix: need at least two columns");

    PairwiseResult out;
    for (const auto& col : dataset.columns) out.column_names.push_back(col.name);
    out.n_mc = opts.n_mc;
    out.ropi = opts.ropi;
    out.shared_streams = false;

    const auto pairs = all_pairs(k);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [i, j] = pairs[p];
        const auto rows = dataset.complete_rows(i, j);
        if (rows.size() < 3) {
            // Too little overlap to test; report an undecided cell.
            PairCell cell;
            cell.i = i;
            cell.j = j;
            cell.posterior_mean = std::numeric_limits<double>::quiet_NaN();
            cell.p_dependent = 0.5;
            cell.n_used = static_cast<Eigen::Index>(rows.size());
            out.pairs.push_back(std::move(cell));
            continue;
        }

        const auto& col_i = dataset.columns[static_cast<std::size_t>(i)];
        const auto& col_j = dataset.columns[static_cast<std::size_t>(j)];
        const GramMatrix ki =
            build_gram(col_i, schema.columns[static_cast<std::size_t>(i)].kernel, rows);
        const GramMatrix kj =
            build_gram(col_j, schema.columns[static_cast<std::size_t>(j)].kernel, rows);

        BdcorOptions bopts;
        bopts.threads = opts.threads;
        bopts.tau_budget = opts.tau_budget;
        bopts.label_x = col_i.name;
        bopts.label_y = col_j.name;
        const PosteriorSamples ps = bdcor_posterior(
            ki, kj, opts.n_mc, rng.child(stream_tag::pair, static_cast<std::uint64_t>(p)),
            bopts);
        out.pairs.push_back(make_cell(i, j, ps.samples, ps.tau_mean,
                                      static_cast<Eigen::Index>(rows.size()), opts.ropi,
                                      opts.store_samples));
    }
    return out;
}

JointReport joint_accept(const PairwiseResult& result, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw config_error("joint_accept: gamma must lie in (0, 1)");
    if (!result.shared_streams)
        throw config_error(
            "joint_accept: pairwise result was not computed with shared weight streams "
            "(complete-case joint mode required)");
    for (const auto& cell : result.pairs)
        if (cell.exceeds_ropi.size() != static_cast<std::size_t>(result.n_mc))
            throw data_error("joint_accept: per-iteration indicators missing");

    // Majority direction per pair, then sort by marginal descending with
    // lexicographic (i, j) tie-breaks.
    std::vector<PairStatement> statements;
    statements.reserve(result.pairs.size());
    for (const auto& cell : result.pairs) {
        PairStatement s;
        s.i = cell.i;
        s.j = cell.j;
        s.dependent = cell.p_dependent > 0.5;
        s.marginal = s.dependent ? cell.p_dependent : 1.0 - cell.p_dependent;
        statements.push_back(s);
    }
    std::vector<std::size_t> order(statements.size());
    for (std::size_t s = 0; s < order.size(); ++s) order[s] = s;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (statements[a].marginal != statements[b].marginal)
            return statements[a].marginal > statements[b].marginal;
        if (statements[a].i != statements[b].i) return statements[a].i < statements[b].i;
        return statements[a].j < statements[b].j;
    });

    JointReport report;
    report.gamma = gamma;

    std::vector<std::uint8_t> conj(static_cast<std::size_t>(result.n_mc), 1);
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        const auto& stmt = statements[order[rank]];
        const auto& cell = result.pairs[order[rank]];
        std::size_t holds = 0;
        std::vector<std::uint8_t> next = conj;
        for (std::size_t t = 0; t < next.size(); ++t) {
            const bool sat = stmt.dependent ? cell.exceeds_ropi[t] != 0
                                            : cell.exceeds_ropi[t] == 0;
            next[t] = next[t] && sat;
            holds += next[t];
        }
        const double joint =
            static_cast<double>(holds) / static_cast<double>(result.n_mc);
        if (joint > gamma) {
            report.accepted.push_back(stmt);
            report.joint_probability = joint;
            conj = std::move(next);
        } else {
            report.next_joint_probability = joint;
            break;
        }
    }
    return report;
}

}  // namespace bkr
