#include "bkr/bdcor.hpp"

#include <algorithm>
#include <cmath>

#include "bkr/error.hpp"
#include "posterior_mc.hpp"

namespace bkr {

double PosteriorSamples::quantile(double p) const {
    if (samples.size() == 0) throw data_error("quantile of empty sample set");
    std::vector<double> sorted(samples.data(), samples.data() + samples.size());
    std::sort(sorted.begin(), sorted.end());
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - std::floor(h)) * (sorted[lo + 1] - sorted[lo]);
}

const char* to_string(DecisionLabel label) {
    switch (label) {
        case DecisionLabel::Dependent: return "dependent";
        case DecisionLabel::Independent: return "independent";
        case DecisionLabel::Undecided: return "undecided";
    }
    return "undecided";
}

namespace {

PosteriorSamples run_pair(const detail::PosteriorEvaluator& eval, int n_mc,
                          const RngStream& rng, const BdcorOptions& opts) {
    detail::McSpec spec;
    spec.pairs = {{0, 1}};
    spec.labels = {opts.label_x, opts.label_y};
    spec.n_mc = n_mc;
    spec.threads = opts.threads;
    spec.tau_budget = opts.tau_budget;
    detail::McResult res = detail::run_posterior_mc(eval, spec, rng);

    PosteriorSamples out;
    out.samples = std::move(res.samples[0]);
    out.tau_mean = res.tau_mean[0];
    out.n_mc = n_mc;
    return out;
}

}  // namespace

PosteriorSamples bdcor_posterior(const GramMatrix& kx, const GramMatrix& ky, int n_mc,
                                 const RngStream& rng, const BdcorOptions& opts) {
    if (kx.size() != ky.size())
        throw data_error("bdcor_posterior: Gram matrices have mismatched sizes");
    auto eval = detail::make_exact_evaluator({&kx.mat(), &ky.mat()});
    return run_pair(*eval, n_mc, rng, opts);
}

PosteriorSamples bdcor_posterior_lowrank(const FeatureMatrix& phi_x,
                                         const FeatureMatrix& phi_y, int n_mc,
                                         const RngStream& rng,
                                         const BdcorOptions& opts) {
    if (phi_x.rows() != phi_y.rows())
        throw data_error("bdcor_posterior_lowrank: feature matrices have mismatched rows");
    auto eval = detail::make_lowrank_evaluator({&phi_x.phi, &phi_y.phi});
    return run_pair(*eval, n_mc, rng, opts);
}

Decision decide(const PosteriorSamples& samples, double ropi, double threshold) {
    if (!(ropi >= 0.0 && ropi <= 1.0))
        throw config_error("decide: ropi must lie in [0, 1]");
    if (!(threshold > 0.5 && threshold < 1.0))
        throw config_error("decide: threshold must lie in (0.5, 1)");
    if (samples.n_mc < 1 || samples.samples.size() != samples.n_mc)
        throw data_error("decide: malformed posterior samples");

    Eigen::Index above = 0;
    for (Eigen::Index i = 0; i < samples.samples.size(); ++i)
        if (samples.samples[i] > ropi) ++above;

    Decision d;
    d.ropi = ropi;
    d.threshold = threshold;
    d.p_dependent = static_cast<double>(above) / static_cast<double>(samples.n_mc);
    d.p_independent = 1.0 - d.p_dependent;
    if (d.p_dependent > threshold)
        d.label = DecisionLabel::Dependent;
    else if (d.p_independent > threshold)
        d.label = DecisionLabel::Independent;
    else
        d.label = DecisionLabel::Undecided;
    return d;
}

}  // namespace bkr
