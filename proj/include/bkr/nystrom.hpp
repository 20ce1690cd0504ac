#pragma once

#include <Eigen/Core>
#include <vector>

#include "bkr/column.hpp"
#include "bkr/rng.hpp"

namespace bkr {

/// Low-rank kernel features: phi phi^T approximates the column's Gram
/// matrix. The retained rank r can be below the landmark count m when the
/// landmark block is rank deficient.
struct FeatureMatrix {
    Eigen::MatrixXd phi;                   // n x r
    std::vector<Eigen::Index> landmarks;   // row indices of the m landmarks

    Eigen::Index rows() const { return phi.rows(); }
    Eigen::Index rank() const { return phi.cols(); }
};

/// Relative eigenvalue cutoff below which landmark-block directions are
/// dropped. Keeps the pseudo-inverse square root stable for rank-deficient
/// kernels such as the indicator.
inline constexpr double kNystromRankCutoff = 1e-10;

/// Nystrom features from m landmarks sampled uniformly without replacement:
/// phi = K_nm U diag(lambda)^{-1/2} over the eigenpairs of the landmark
/// block K_mm above the relative cutoff.
FeatureMatrix nystrom_features(const ColumnKernel& kernel, Eigen::Index m,
                               RngStream& rng);

/// Convenience overload constructing the kernel from a column and spec.
FeatureMatrix nystrom_features(const Column& column, const KernelSpec& spec,
                               Eigen::Index m, RngStream& rng);

}  // namespace bkr
