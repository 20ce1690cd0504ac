#include "bkr/dp_posterior.hpp"

#include <numeric>

#include "bkr/error.hpp"

namespace bkr {

WeightVector sample_weights(Eigen::Index n, RngStream& rng) {
    if (n < 1) throw config_error("sample_weights: n must be at least 1");
    Eigen::VectorXd w(n);
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        w[i] = rng.next_exponential();
        total += w[i];
    }
    if (total <= 0.0) {
        // All exponentials hit exactly zero; fall back to the simplex centre.
        w.setConstant(1.0 / static_cast<double>(n));
        return {w};
    }
    w /= total;
    return {w};
}

Permutation sample_permutation(Eigen::Index n, RngStream& rng) {
    if (n < 1) throw config_error("sample_permutation: n must be at least 1");
    Permutation pi(static_cast<std::size_t>(n));
    std::iota(pi.begin(), pi.end(), Eigen::Index{0});
    for (Eigen::Index i = n - 1; i > 0; --i) {
        const auto j = static_cast<Eigen::Index>(
            rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(pi[static_cast<std::size_t>(i)], pi[static_cast<std::size_t>(j)]);
    }
    return pi;
}

}  // namespace bkr
