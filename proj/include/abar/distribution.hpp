#pragma once

#include <utility>

namespace abar {

/// Parameters of the Abar family: the norm `a` of the 3D mean vector and the
/// common per-axis standard deviation `sigma`. Always valid once constructed.
class AbarParams {
 public:
  /// Throws DomainError unless a >= 0, sigma > 0 and both are finite.
  AbarParams(double a, double sigma);

  double a() const noexcept { return a_; }
  double sigma() const noexcept { return sigma_; }

  friend bool operator==(const AbarParams&, const AbarParams&) = default;

 private:
  double a_;
  double sigma_;
};

// Abar is the law of |X| for X ~ N(m, sigma^2 I_3) with |m| = a:
//
//   f(y) = y / (sqrt(2 pi) sigma a) [exp(-(y-a)^2 / 2 sigma^2)
//                                    - exp(-(y+a)^2 / 2 sigma^2)],  y >= 0.
//
// Every routine below evaluates this (or its integrals) in a factored form
// that neither overflows for large a*y/sigma^2 nor cancels for small a.
// Variates must be finite and >= 0, otherwise DomainError.

double pdf(const AbarParams& p, double y);

/// log f(y). Returns -infinity at y = 0, where the density vanishes.
double log_pdf(const AbarParams& p, double y);

/// a = 0 member: sqrt(2/pi) y^2 / sigma^3 exp(-y^2 / 2 sigma^2).
double pdf_maxwell_limit(double sigma, double y);

/// Large a/sigma limit: the N(a, sigma^2) density.
double pdf_gaussian_limit(const AbarParams& p, double y);

double cdf(const AbarParams& p, double y);

/// 1 - cdf, evaluated from a sum of positive terms so the upper tail keeps
/// its relative accuracy.
double survival(const AbarParams& p, double y);

/// Inverse CDF for prob in (0, 1), solved by bracketed root finding on
/// [0, a + 40 sigma].
double quantile(const AbarParams& p, double prob);

double mean(const AbarParams& p);

/// E[Y^2] = 3 sigma^2 + a^2.
double raw_moment2(const AbarParams& p);

double variance(const AbarParams& p);

/// Moment generating function E[exp(sY)]. Throws RangeError when a term's
/// exponent exceeds what a double can hold.
double mgf(const AbarParams& p, double s);

/// Central finite differences of mgf at s = 0 with step 1e-5:
/// (first derivative, second derivative). Compare with mean / raw_moment2.
std::pair<double, double> mgf_derivative_check(const AbarParams& p);

}  // namespace abar
