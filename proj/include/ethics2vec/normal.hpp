#pragma once

#include <cmath>

namespace e2v {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779;

/// Standard normal density phi(z).
inline double norm_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

/// Standard normal CDF Phi(z), via erfc so both tails keep full precision.
inline double norm_cdf(double z) { return 0.5 * std::erfc(-z * 0.7071067811865475244); }

/// Logistic function 1 / (1 + e^-z).
inline double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

} // namespace e2v
