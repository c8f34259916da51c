#pragma once

namespace birnbaum {

/// Standard normal distribution function, absolute error well below 1e-12.
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Inverse of normal_cdf on (0,1); Newton-refined to ~1e-13.
double normal_quantile(double p);

} // namespace birnbaum
