#pragma once

#include <functional>
#include <span>

namespace abar {

/// Asymptotic Kolmogorov-Smirnov critical coefficient at alpha = 0.01.
inline constexpr double kKsCoefficient01 = 1.628;

struct KsResult {
  double statistic = 0.0;  ///< D
  double threshold = 0.0;  ///< critical value at alpha = 0.01

  bool passes() const { return statistic <= threshold; }
};

/// One-sample KS statistic of sorted samples against `cdf`:
/// D = max_i max(i/n - F(x_i), F(x_i) - (i-1)/n), threshold 1.628 / sqrt(n).
/// Throws InputError for fewer than 10 samples or unsorted input.
KsResult ks_statistic(std::span<const double> sorted_samples,
                      const std::function<double(double)>& cdf);

/// Two-sample KS statistic (sup distance between empirical CDFs), threshold
/// 1.628 * sqrt((n + m) / (n m)). Inputs need not be sorted.
KsResult ks_two_sample(std::span<const double> first,
                       std::span<const double> second);

}  // namespace abar
