#pragma once

#include <cstddef>
#include <functional>

#include "abar/errors.hpp"

namespace abar {

/// Accuracy request shared by quadrature and root finding. A result is
/// accepted when its error is at most max(abs, rel * |result|).
struct Tolerance {
  double rel = 1e-12;
  double abs = 0.0;

  /// Throws DomainError unless both parts are finite, non-negative and not
  /// both zero.
  void validate() const;
  double bound(double magnitude) const;
};

namespace constants {
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double sqrt2 = 1.414213562373095048801688724209698079;
inline constexpr double sqrt_pi = 1.772453850905516027298167483341145183;
inline constexpr double sqrt_2pi = 2.506628274631000502415765284811045253;
inline constexpr double sqrt_2_over_pi = 0.797884560802865355879892119868763737;
inline constexpr double ln_sqrt_2pi = 0.918938533204672741780329736405617640;
}  // namespace constants

/// Complementary error function. Relative error below 1e-13 on |x| <= 10;
/// underflows smoothly to 0 for large positive x.
double erfc(double x);

/// Error function, accurate in relative terms near the origin as well.
double erf(double x);

/// Scaled complementary error function exp(x^2) * erfc(x). Finite for every
/// x >= -26.6; below that exp(x^2) overflows and RangeError is thrown.
double erfcx(double x);

/// log(1 - exp(-x)) for x > 0 without cancellation at either end.
double log1mexp(double x);

/// (1 - exp(-x)) / x for x >= 0, equal to 1 at x = 0.
double one_minus_exp_over_x(double x);

using RealFunction = std::function<double(double)>;

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [lo, hi].
/// Subdivides the interval with the largest error estimate until the summed
/// estimate is at most tol.bound(|value|). Throws NumericalError carrying the
/// best estimate when `max_intervals` subintervals do not suffice.
QuadratureResult integrate_adaptive_ex(const RealFunction& f, double lo,
                                       double hi, const Tolerance& tol,
                                       std::size_t max_intervals = 4000);

double integrate_adaptive(const RealFunction& f, double lo, double hi,
                          const Tolerance& tol);

inline constexpr int kRootMaxIterations = 200;

/// Brent-style safeguarded root finder: inverse quadratic / secant steps
/// with bisection fallback. Requires f(lo) and f(hi) of opposite sign (or a
/// zero at an endpoint). The result always lies inside [lo, hi].
double find_root_bracketed(const RealFunction& f, double lo, double hi,
                           const Tolerance& tol);

}  // namespace abar
