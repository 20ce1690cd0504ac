#pragma once

#include <Eigen/Core>

#include "bkr/dp_posterior.hpp"
#include "bkr/kernels.hpp"

namespace bkr {

/// One posterior HSIC draw Tr(Kx R Ky R) with R = diag(W) - W^T W, evaluated
/// through the Schur-product expansion
///
///   W (Kx o Ky) W^T - 2 W (Kx W^T o Ky W^T) + (W Kx W^T)(W Ky W^T)
///
/// in O(n^2) time without materialising R. Results within -1e-12 of zero are
/// clamped to 0 (the exact value is nonnegative; tiny negatives are roundoff).
double hsic_sample(const GramMatrix& kx, const GramMatrix& ky, const WeightVector& w);

/// Plug-in estimate of HSIC from the two Gram matrices: the three sample-mean
/// contractions
///   (1/n^2) sum_ij Kx_ij Ky_ij + (1/n^4) (sum Kx)(sum Ky)
///   - (2/n^3) sum_i (row_i Kx)(row_i Ky).
double hsic_empirical(const GramMatrix& kx, const GramMatrix& ky);

/// Low-rank posterior HSIC draw |phiX^T R phiY|_F^2 where phi phi^T
/// approximates the Gram matrix; O(n m m') without forming R.
double hsic_sample_lowrank(const Eigen::MatrixXd& phi_x, const Eigen::MatrixXd& phi_y,
                           const WeightVector& w);

namespace detail {

/// Shared empirical-HSIC core; `pi` (when non-null) re-indexes Ky rows and
/// columns, i.e. evaluates the statistic on the re-paired sample
/// (X_i, Y_pi(i)). The identity permutation reproduces hsic_empirical
/// bitwise, which keeps permutation-test comparisons stable under kernel
/// rescaling.
double hsic_empirical_core(const Eigen::MatrixXd& kx, const Eigen::MatrixXd& ky,
                           const Eigen::Index* pi);

/// Clamp a tiny negative HSIC draw (roundoff) to zero.
inline double clamp_roundoff(double v) { return (v < 0.0 && v >= -1e-12) ? 0.0 : v; }

}  // namespace detail

}  // namespace bkr
