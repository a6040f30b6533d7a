#include "abar/ks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "abar/errors.hpp"

namespace abar {

KsResult ks_statistic(std::span<const double> sorted_samples,
                      const std::function<double(double)>& cdf) {
  const std::size_t n = sorted_samples.size();
  if (n < 10) {
    throw InputError("ks_statistic: at least 10 samples required");
  }
  if (!std::is_sorted(sorted_samples.begin(), sorted_samples.end())) {
    throw InputError("ks_statistic: samples must be sorted ascending");
  }
  const double count = static_cast<double>(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(sorted_samples[i]);
    const double above = static_cast<double>(i + 1) / count - f;
    const double below = f - static_cast<double>(i) / count;
    d = std::max({d, above, below});
  }
  return {d, kKsCoefficient01 / std::sqrt(count)};
}

KsResult ks_two_sample(std::span<const double> first,
                       std::span<const double> second) {
  if (first.size() < 10 || second.size() < 10) {
    throw InputError("ks_two_sample: at least 10 samples per side required");
  }
  std::vector<double> x(first.begin(), first.end());
  std::vector<double> y(second.begin(), second.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());

  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / n -
                              static_cast<double>(j) / m));
  }
  return {d, kKsCoefficient01 * std::sqrt((n + m) / (n * m))};
}

}  // namespace abar
