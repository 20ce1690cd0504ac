#pragma once

namespace bkr {

/// Standard normal CDF.
double norm_cdf(double z);

/// Standard normal quantile function, accurate to roughly double precision
/// (rational approximation plus one Halley refinement). p must lie in (0, 1).
double norm_ppf(double p);

}  // namespace bkr
