#include "bkr/nhst.hpp"

#include <atomic>

#include "bkr/dp_posterior.hpp"
#include "bkr/error.hpp"
#include "bkr/hsic.hpp"
#include "bkr/parallel.hpp"

namespace bkr {

NhstResult hsic_permutation_test(const GramMatrix& kx, const GramMatrix& ky,
                                 int n_perm, const RngStream& rng, double alpha,
                                 int threads) {
    if (kx.size() != ky.size())
        throw data_error("hsic_permutation_test: Gram matrices have mismatched sizes");
    const Eigen::Index n = kx.size();
    if (n < 3) throw data_error("hsic_permutation_test: need at least 3 rows");
    if (n_perm < 1) throw config_error("hsic_permutation_test: n_perm must be positive");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw config_error("hsic_permutation_test: alpha must lie in (0, 1)");

    const double statistic = detail::hsic_empirical_core(kx.mat(), ky.mat(), nullptr);

    std::atomic<std::int64_t> count{0};
    parallel_chunks(n_perm, threads, [&](std::int64_t begin, std::int64_t end) {
        std::int64_t local = 0;
        for (std::int64_t b = begin; b < end; ++b) {
            auto perm_rng = rng.child(stream_tag::nhst, static_cast<std::uint64_t>(b));
            const Permutation pi = sample_permutation(n, perm_rng);
            const double replicate =
                detail::hsic_empirical_core(kx.mat(), ky.mat(), pi.data());
            if (replicate >= statistic) ++local;
        }
        count += local;
    });

    NhstResult out;
    out.statistic = statistic;
    out.n_permutations = n_perm;
    out.p_value = (1.0 + static_cast<double>(count.load())) /
                  (static_cast<double>(n_perm) + 1.0);
    out.alpha = alpha;
    out.rejected = out.p_value < alpha;
    return out;
}

double bonferroni(double alpha, int k) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw config_error("bonferroni: alpha must lie in (0, 1)");
    if (k < 1) throw config_error("bonferroni: k must be at least 1");
    return alpha / static_cast<double>(k);
}

}  // namespace bkr
