#pragma once

namespace esdg {

/// Precision-dependent tuning constants. The logarithmic-mean series branch
/// activates for xi^2 below `series_threshold_sq` (xi = jump/sum); the series
/// is truncated so that its error stays below one ulp of the given precision.
template <class Real>
struct real_traits;

template <>
struct real_traits<double> {
  static constexpr double series_threshold_sq = 1e-8; // |xi| < 1e-4
  static constexpr int series_terms = 3;              // up to xi^6
  static constexpr int print_digits = 17;
};

template <>
struct real_traits<float> {
  static constexpr float series_threshold_sq = 1e-4f; // |xi| < 1e-2
  static constexpr int series_terms = 1;              // up to xi^2
  static constexpr int print_digits = 9;
};

} // namespace esdg
