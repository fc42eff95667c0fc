#pragma once

// Standard normal density, distribution and quantile functions shared by every module.

namespace mixeff {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
inline constexpr double kSqrt2 = 1.41421356237309504880168872421;

// phi(x) = exp(-x^2/2)/sqrt(2 pi)
double normal_pdf(double x) noexcept;

// Phi(x), absolute error below 1e-15 across the real line.
double normal_cdf(double x) noexcept;

// 1 - Phi(x) without cancellation in the upper tail.
double normal_sf(double x) noexcept;

// 2 Phi(x) - 1, evaluated through erf so that it stays accurate for small |x|.
double normal_central_mass(double x) noexcept;

// Inverse of Phi on (0, 1). Returns -inf / +inf at 0 / 1 and NaN outside [0, 1].
double normal_quantile(double p) noexcept;

// Rational approximation to the quantile without refinement, for p in (0, 1).
// Relative error below 1.2e-9; used by the samplers.
double normal_quantile_fast(double p) noexcept;

}  // namespace mixeff
