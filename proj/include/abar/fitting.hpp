#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abar/distribution.hpp"

namespace abar {

enum class FitMethod { moments, mle };

const char* to_string(FitMethod method);
FitMethod parse_fit_method(const std::string& text);

struct FitResult {
  double a_hat = 0.0;
  double sigma_hat = 1.0;
  FitMethod method = FitMethod::moments;
  double log_likelihood = 0.0;
  /// Root-finder iterations (moments) or objective evaluations (mle).
  std::size_t iterations = 0;
  bool converged = false;
  /// Empty unless the estimator hit a boundary or its budget.
  std::string diagnostic;

  AbarParams params() const { return AbarParams(a_hat, sigma_hat); }
};

inline constexpr std::size_t kMinFitSamples = 10;
inline constexpr std::size_t kMleEvaluationBudget = 2000;

/// Sum of log_pdf over the samples. Throws DomainError if any sample is
/// <= 0 (the likelihood would be -infinity) and InputError for fewer than
/// two samples.
double log_likelihood(const AbarParams& p, std::span<const double> samples);

/// Solves mean(a, sigma(a)) = m1 with sigma(a)^2 = (m2 - a^2) / 3 for
/// a in [0, sqrt(m2)). When m1 lies below the a = 0 model mean no sign
/// change exists; the a = 0 boundary solution is returned with
/// converged = false.
FitResult fit_moments(std::span<const double> samples);

/// Same solve from precomputed sample moments (m1 = mean, m2 = mean square).
FitResult fit_moments_from(double m1, double m2);

/// Nelder-Mead maximisation of the log-likelihood over (a, ln sigma),
/// started from `init` or from fit_moments. Stops when the simplex diameter
/// falls below 1e-8 relative or after kMleEvaluationBudget evaluations.
FitResult fit_mle(std::span<const double> samples,
                  std::optional<AbarParams> init = std::nullopt);

/// Flat JSON object: a_hat, sigma_hat, method, log_likelihood, iterations,
/// converged, plus diagnostic when one was recorded.
std::string to_json(const FitResult& fit);

/// Reads one positive value per line. Lines starting with '#' and blank
/// lines are skipped; a single non-numeric header line is allowed before the
/// first value. Throws InputError naming the 1-based line of any other
/// malformed or non-positive entry.
std::vector<double> parse_samples_csv(const std::string& text);

}  // namespace abar
