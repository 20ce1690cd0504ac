#pragma once

#include "bkr/dp_posterior.hpp"
#include "bkr/kernels.hpp"

namespace bkr::oracles {

// Brute-force reference implementations used by the test suite to validate
// the fast paths. They are shipped so downstream users can re-verify, but
// hard size guards keep them out of production use.

/// Tr(Kx R Ky R) with R = diag(W) - W^T W materialised literally. n <= 64.
double hsic_trace_naive(const GramMatrix& kx, const GramMatrix& ky,
                        const WeightVector& w);

/// The three empirical-HSIC contractions as literal index loops (the
/// quadruple sum included). n <= 20.
double hsic_empirical_naive(const GramMatrix& kx, const GramMatrix& ky);

/// The expanded posterior-HSIC expression
///   W Kxy W^T + (W Kx W^T)(W Ky W^T) - 2 W (Kx W^T o Ky W^T)
/// with Kxy = Kx o Ky over the observed atoms, written as plain loops.
/// n <= 20.
double hsic_expanded_naive(const GramMatrix& kx, const GramMatrix& ky,
                         const WeightVector& w);

}  // namespace bkr::oracles
