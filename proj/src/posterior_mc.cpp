#include "posterior_mc.hpp"

#include <cmath>

#include "bkr/error.hpp"
#include "bkr/hsic.hpp"
#include "bkr/parallel.hpp"

namespace bkr::detail {
namespace {

class ExactEvaluator final : public PosteriorEvaluator {
public:
    explicit ExactEvaluator(std::vector<const Eigen::MatrixXd*> grams)
        : grams_(std::move(grams)) {
        const Eigen::Index n = grams_.front()->rows();
        for (const auto* g : grams_)
            if (g->rows() != n || g->cols() != n)
                throw data_error("posterior sampler: Gram matrices have mismatched sizes");
        kw_.resize(grams_.size());
        qw_.resize(grams_.size());
        scratch_.resize(n);
        permuted_w_.resize(n);
    }

    Eigen::Index n_rows() const override { return grams_.front()->rows(); }
    int n_columns() const override { return static_cast<int>(grams_.size()); }

    void begin_draw(const Eigen::VectorXd& w) override {
        w_ = &w;
        for (std::size_t c = 0; c < grams_.size(); ++c) {
            kw_[c].noalias() = (*grams_[c]) * w;
            qw_[c] = w.dot(kw_[c]);
        }
    }

    double self_term(int col) override { return cross_term(col, col); }

    double cross_term(int a, int b) override {
        const Eigen::MatrixXd& ka = *grams_[static_cast<std::size_t>(a)];
        const Eigen::MatrixXd& kb = *grams_[static_cast<std::size_t>(b)];
        const Eigen::VectorXd& w = *w_;
        const Eigen::Index n = w.size();
        double t1 = 0.0;
        for (Eigen::Index c = 0; c < n; ++c)
            t1 += w[c] * ka.col(c).cwiseProduct(kb.col(c)).dot(w);
        const double t2 = w.dot(kw_[static_cast<std::size_t>(a)].cwiseProduct(
            kw_[static_cast<std::size_t>(b)]));
        const double t3 =
            qw_[static_cast<std::size_t>(a)] * qw_[static_cast<std::size_t>(b)];
        return bkr::detail::clamp_roundoff(t1 - 2.0 * t2 + t3);
    }

    double cross_term_permuted(int a, int b, const Permutation& pi) override {
        const Eigen::MatrixXd& ka = *grams_[static_cast<std::size_t>(a)];
        const Eigen::MatrixXd& kb = *grams_[static_cast<std::size_t>(b)];
        const Eigen::VectorXd& w = *w_;
        const Eigen::Index n = w.size();

        // w~ scatters w through pi, so Kb_pi * w = gather(Kb * w~, pi).
        for (Eigen::Index j = 0; j < n; ++j)
            permuted_w_[pi[static_cast<std::size_t>(j)]] = w[j];
        scratch_.noalias() = kb * permuted_w_;

        double t1 = 0.0;
        for (Eigen::Index c = 0; c < n; ++c) {
            const double* ka_col = ka.col(c).data();
            const double* kb_col = kb.col(pi[static_cast<std::size_t>(c)]).data();
            double s = 0.0;
            for (Eigen::Index r = 0; r < n; ++r)
                s += ka_col[r] * kb_col[pi[static_cast<std::size_t>(r)]] * w[r];
            t1 += w[c] * s;
        }

        double t2 = 0.0;
        const Eigen::VectorXd& ka_w = kw_[static_cast<std::size_t>(a)];
        for (Eigen::Index i = 0; i < n; ++i)
            t2 += w[i] * ka_w[i] * scratch_[pi[static_cast<std::size_t>(i)]];

        const double t3 =
            qw_[static_cast<std::size_t>(a)] * permuted_w_.dot(scratch_);
        return bkr::detail::clamp_roundoff(t1 - 2.0 * t2 + t3);
    }

    std::unique_ptr<PosteriorEvaluator> clone() const override {
        return std::make_unique<ExactEvaluator>(grams_);
    }

private:
    std::vector<const Eigen::MatrixXd*> grams_;
    const Eigen::VectorXd* w_ = nullptr;
    std::vector<Eigen::VectorXd> kw_;  // K_c * w per column
    std::vector<double> qw_;           // w' K_c w per column
    Eigen::VectorXd scratch_;
    Eigen::VectorXd permuted_w_;
};

class LowrankEvaluator final : public PosteriorEvaluator {
public:
    explicit LowrankEvaluator(std::vector<const Eigen::MatrixXd*> features)
        : features_(std::move(features)) {
        const Eigen::Index n = features_.front()->rows();
        for (const auto* f : features_)
            if (f->rows() != n)
                throw data_error("posterior sampler: feature matrices have mismatched rows");
        weighted_.resize(features_.size());
        colmean_.resize(features_.size());
    }

    Eigen::Index n_rows() const override { return features_.front()->rows(); }
    int n_columns() const override { return static_cast<int>(features_.size()); }

    void begin_draw(const Eigen::VectorXd& w) override {
        w_ = &w;
        for (std::size_t c = 0; c < features_.size(); ++c) {
            weighted_[c].noalias() = w.asDiagonal() * (*features_[c]);
            colmean_[c].noalias() = features_[c]->transpose() * w;
        }
    }

    double self_term(int col) override { return cross_term(col, col); }

    double cross_term(int a, int b) override {
        const auto ia = static_cast<std::size_t>(a);
        const auto ib = static_cast<std::size_t>(b);
        cross_.noalias() = features_[ia]->transpose() * weighted_[ib];
        cross_.noalias() -= colmean_[ia] * colmean_[ib].transpose();
        return cross_.squaredNorm();
    }

    double cross_term_permuted(int a, int b, const Permutation& pi) override {
        const auto ia = static_cast<std::size_t>(a);
        const auto ib = static_cast<std::size_t>(b);
        const Eigen::MatrixXd& phi_b = *features_[ib];
        const Eigen::VectorXd& w = *w_;
        const Eigen::Index n = phi_b.rows();

        permuted_.resize(n, phi_b.cols());
        for (Eigen::Index i = 0; i < n; ++i)
            permuted_.row(i) = w[i] * phi_b.row(pi[static_cast<std::size_t>(i)]);

        cross_.noalias() = features_[ia]->transpose() * permuted_;
        const Eigen::RowVectorXd mean_pi = permuted_.colwise().sum();
        cross_.noalias() -= colmean_[ia] * mean_pi;
        return cross_.squaredNorm();
    }

    std::unique_ptr<PosteriorEvaluator> clone() const override {
        return std::make_unique<LowrankEvaluator>(features_);
    }

private:
    std::vector<const Eigen::MatrixXd*> features_;
    const Eigen::VectorXd* w_ = nullptr;
    std::vector<Eigen::MatrixXd> weighted_;  // diag(w) * phi_c
    std::vector<Eigen::VectorXd> colmean_;   // phi_c' w
    Eigen::MatrixXd cross_;
    Eigen::MatrixXd permuted_;
};

}  // namespace

std::unique_ptr<PosteriorEvaluator> make_exact_evaluator(
    std::vector<const Eigen::MatrixXd*> grams) {
    return std::make_unique<ExactEvaluator>(std::move(grams));
}

std::unique_ptr<PosteriorEvaluator> make_lowrank_evaluator(
    std::vector<const Eigen::MatrixXd*> features) {
    return std::make_unique<LowrankEvaluator>(std::move(features));
}

McResult run_posterior_mc(const PosteriorEvaluator& prototype, const McSpec& spec,
                          const RngStream& rng) {
    const Eigen::Index n = prototype.n_rows();
    const int n_cols = prototype.n_columns();
    const auto n_pairs = spec.pairs.size();
    if (n < 3) throw data_error("posterior sampler: need at least 3 rows");
    if (spec.n_mc < 1) throw config_error("posterior sampler: n_mc must be at least 1");
    if (static_cast<int>(spec.labels.size()) != n_cols)
        throw config_error("posterior sampler: one label per column required");

    // Which columns participate in some pair (self terms needed only there).
    std::vector<char> used(static_cast<std::size_t>(n_cols), 0);
    for (const auto& p : spec.pairs) {
        used[static_cast<std::size_t>(p.a)] = 1;
        used[static_cast<std::size_t>(p.b)] = 1;
    }

    std::vector<Eigen::VectorXd> ratio(n_pairs, Eigen::VectorXd(spec.n_mc));
    const int tau_draws = spec.tau_budget > 0 ? spec.tau_budget : spec.n_mc;
    std::vector<Eigen::VectorXd> tau(n_pairs, Eigen::VectorXd(tau_draws));
    std::vector<int> degenerate_col(static_cast<std::size_t>(spec.n_mc) +
                                        static_cast<std::size_t>(
                                            spec.tau_budget > 0 ? spec.tau_budget : 0),
                                    -1);

    const bool coupled = spec.tau_budget <= 0;

    auto worker = [&](std::int64_t begin, std::int64_t end) {
        auto eval = prototype.clone();
        std::vector<double> self(static_cast<std::size_t>(n_cols));
        for (std::int64_t t = begin; t < end; ++t) {
            auto w_rng = rng.child(stream_tag::weights, static_cast<std::uint64_t>(t));
            const WeightVector w = sample_weights(n, w_rng);
            eval->begin_draw(w.w);

            bool bad = false;
            for (int c = 0; c < n_cols && !bad; ++c) {
                if (!used[static_cast<std::size_t>(c)]) continue;
                self[static_cast<std::size_t>(c)] = eval->self_term(c);
                if (self[static_cast<std::size_t>(c)] < kSelfHsicFloor) {
                    degenerate_col[static_cast<std::size_t>(t)] = c;
                    bad = true;
                }
            }
            if (bad) continue;

            const auto perm_parent =
                rng.child(stream_tag::permutation, static_cast<std::uint64_t>(t));
            for (std::size_t p = 0; p < n_pairs; ++p) {
                const auto [a, b] = spec.pairs[p];
                const double denom = std::sqrt(self[static_cast<std::size_t>(a)] *
                                               self[static_cast<std::size_t>(b)]);
                ratio[p][t] = eval->cross_term(a, b) / denom;
                if (coupled) {
                    auto perm_rng = perm_parent.child(stream_tag::pair,
                                                      static_cast<std::uint64_t>(p));
                    const Permutation pi = sample_permutation(n, perm_rng);
                    tau[p][t] = eval->cross_term_permuted(a, b, pi) / denom;
                }
            }
        }
    };

    parallel_chunks(spec.n_mc, spec.threads, worker);

    if (!coupled) {
        auto tau_worker = [&](std::int64_t begin, std::int64_t end) {
            auto eval = prototype.clone();
            std::vector<double> self(static_cast<std::size_t>(n_cols));
            for (std::int64_t s = begin; s < end; ++s) {
                auto w_rng =
                    rng.child(stream_tag::tau_weights, static_cast<std::uint64_t>(s));
                const WeightVector w = sample_weights(n, w_rng);
                eval->begin_draw(w.w);
                bool bad = false;
                for (int c = 0; c < n_cols && !bad; ++c) {
                    if (!used[static_cast<std::size_t>(c)]) continue;
                    self[static_cast<std::size_t>(c)] = eval->self_term(c);
                    if (self[static_cast<std::size_t>(c)] < kSelfHsicFloor) {
                        degenerate_col[static_cast<std::size_t>(spec.n_mc + s)] = c;
                        bad = true;
                    }
                }
                if (bad) continue;
                const auto perm_parent = rng.child(stream_tag::tau_permutation,
                                                   static_cast<std::uint64_t>(s));
                for (std::size_t p = 0; p < n_pairs; ++p) {
                    const auto [a, b] = spec.pairs[p];
                    const double denom = std::sqrt(self[static_cast<std::size_t>(a)] *
                                                   self[static_cast<std::size_t>(b)]);
                    auto perm_rng = perm_parent.child(stream_tag::pair,
                                                      static_cast<std::uint64_t>(p));
                    const Permutation pi = sample_permutation(n, perm_rng);
                    tau[p][s] = eval->cross_term_permuted(a, b, pi) / denom;
                }
            }
        };
        parallel_chunks(spec.tau_budget, spec.threads, tau_worker);
    }

    for (std::size_t t = 0; t < degenerate_col.size(); ++t) {
        if (degenerate_col[t] >= 0)
            throw degenerate_error(
                "posterior sampler: variable '" +
                spec.labels[static_cast<std::size_t>(degenerate_col[t])] +
                "' has a degenerate (near-constant) kernel");
    }

    McResult out;
    out.samples.resize(n_pairs);
    out.tau_mean.resize(n_pairs);
    for (std::size_t p = 0; p < n_pairs; ++p) {
        // Fixed-order reduction keeps parallel and serial runs bit-identical.
        double acc = 0.0;
        for (Eigen::Index s = 0; s < tau[p].size(); ++s) acc += tau[p][s];
        const double tau_mean = acc / static_cast<double>(tau[p].size());
        if (1.0 - tau_mean < 1e-12)
            throw degenerate_error(
                "posterior sampler: exchangeability correction is degenerate (E(tau) ~ 1)");
        out.tau_mean[p] = tau_mean;
        out.samples[p].resize(spec.n_mc);
        for (int t = 0; t < spec.n_mc; ++t)
            out.samples[p][t] = (ratio[p][t] - tau_mean) / (1.0 - tau_mean);
    }
    return out;
}

}  // namespace bkr::detail
