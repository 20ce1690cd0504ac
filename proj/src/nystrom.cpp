#include "bkr/nystrom.hpp"

#include <Eigen/Eigenvalues>

#include "bkr/error.hpp"

namespace bkr {

FeatureMatrix nystrom_features(const ColumnKernel& kernel, Eigen::Index m,
                               RngStream& rng) {
    const Eigen::Index n = kernel.size();
    if (m < 1) throw config_error("nystrom_features: m must be at least 1");
    if (m > n) throw config_error("nystrom_features: m exceeds the sample size");

    // Partial Fisher-Yates: the first m entries are a uniform sample without
    // replacement.
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto j = i + static_cast<Eigen::Index>(
                               rng.next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    std::vector<Eigen::Index> landmarks(idx.begin(), idx.begin() + m);

    const Eigen::MatrixXd knm = kernel.cross(landmarks);
    Eigen::MatrixXd kmm(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b)
            kmm(a, b) = knm(landmarks[static_cast<std::size_t>(a)], b);
    kmm = 0.5 * (kmm + kmm.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(kmm);
    if (eig.info() != Eigen::Success)
        throw degenerate_error("nystrom_features: eigendecomposition failed");
    const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
    const double lambda_max = lambda[m - 1];
    if (!(lambda_max > 0.0))
        throw degenerate_error("nystrom_features: landmark kernel block is numerically zero");

    const double cutoff = kNystromRankCutoff * lambda_max;
    Eigen::Index keep = 0;
    for (Eigen::Index i = 0; i < m; ++i)
        if (lambda[i] > cutoff) ++keep;
    if (keep == 0)
        throw degenerate_error("nystrom_features: landmark kernel block is numerically zero");

    // Retained eigenpairs are the top `keep` (eigenvalues ascend).
    Eigen::MatrixXd scaled_vecs(m, keep);
    for (Eigen::Index c = 0; c < keep; ++c) {
        const Eigen::Index src = m - keep + c;
        scaled_vecs.col(c) = eig.eigenvectors().col(src) / std::sqrt(lambda[src]);
    }

    FeatureMatrix out;
    out.phi.noalias() = knm * scaled_vecs;
    out.landmarks = std::move(landmarks);
    return out;
}

FeatureMatrix nystrom_features(const Column& column, const KernelSpec& spec,
                               Eigen::Index m, RngStream& rng) {
    const ColumnKernel kernel(column, spec);
    return nystrom_features(kernel, m, rng);
}

}  // namespace bkr
