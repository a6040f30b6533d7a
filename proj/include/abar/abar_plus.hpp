#pragma once

#include <span>

#include "abar/distribution.hpp"

namespace abar {

// Abar+ is the law of |X|^2 for X ~ N(m, sigma^2 I_3), |m| = a: the push-
// forward of Abar under y -> y^2. Structurally it is sigma^2 times a
// noncentral chi-squared with 3 degrees of freedom and noncentrality
// a^2/sigma^2; the implementation works from its own closed form and does
// not route through chi-squared machinery.

/// Direct closed form
///   1/(2 sqrt(2 pi) a sigma) [exp(-(a - sqrt y)^2/2s^2) - exp(-(a + sqrt y)^2/2s^2)],
/// and the Gamma(3/2, scale 2 sigma^2) density when a = 0.
double plus_pdf(const AbarParams& p, double y);

double plus_log_pdf(const AbarParams& p, double y);

/// cdf(p, sqrt(y)).
double plus_cdf(const AbarParams& p, double y);

double plus_survival(const AbarParams& p, double y);

/// quantile(p, prob)^2.
double plus_quantile(const AbarParams& p, double prob);

/// E[Y] = 3 sigma^2 + a^2.
double plus_mean(const AbarParams& p);

/// Largest plus_pdf over the grid. For a/sigma >= 1e6 and a grid bounded by
/// a^2/4 this is below 1e-300: the density tends to zero pointwise on every
/// fixed compact set while its mass moves out near y = a^2.
double plus_degenerate_check(const AbarParams& p, std::span<const double> y_grid);

}  // namespace abar
