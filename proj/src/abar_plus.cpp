#include "abar/abar_plus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "abar/errors.hpp"
#include "abar/numeric.hpp"

namespace abar {

using namespace constants;

namespace {

void require_variate(double y, const char* op) {
  if (!std::isfinite(y) || y < 0.0) {
    std::ostringstream msg;
    msg << op << ": variate must be finite and >= 0 (got " << y << ")";
    throw DomainError(msg.str());
  }
}

}  // namespace

// exp(-(r - a)^2 / 2 sigma^2) * r / (sqrt(2 pi) sigma^3) * g(2 a r / sigma^2)
// with r = sqrt(y) and g(x) = (1 - exp(-x)) / x.
double plus_pdf(const AbarParams& p, double y) {
  require_variate(y, "plus_pdf");
  if (y == 0.0) return 0.0;
  const double sigma = p.sigma();
  const double r = std::sqrt(y);
  const double t = r / sigma;
  if (p.a() == 0.0) {
    return t / (sqrt_2pi * sigma * sigma) * std::exp(-0.5 * t * t);
  }
  const double u = p.a() / sigma;
  const double d = t - u;
  return std::exp(-0.5 * d * d) * t / (sqrt_2pi * sigma * sigma) *
         one_minus_exp_over_x(2.0 * t * u);
}

double plus_log_pdf(const AbarParams& p, double y) {
  require_variate(y, "plus_log_pdf");
  if (y == 0.0) return -std::numeric_limits<double>::infinity();
  const double sigma = p.sigma();
  const double t = std::sqrt(y) / sigma;
  const double u = p.a() / sigma;
  const double d = t - u;
  const double x = 2.0 * t * u;
  const double log_g =
      x < 1.0 ? std::log(one_minus_exp_over_x(x)) : log1mexp(x) - std::log(x);
  return -0.5 * d * d + std::log(t) - ln_sqrt_2pi - 2.0 * std::log(sigma) +
         log_g;
}

double plus_cdf(const AbarParams& p, double y) {
  require_variate(y, "plus_cdf");
  return cdf(p, std::sqrt(y));
}

double plus_survival(const AbarParams& p, double y) {
  require_variate(y, "plus_survival");
  return survival(p, std::sqrt(y));
}

double plus_quantile(const AbarParams& p, double prob) {
  const double root = quantile(p, prob);
  return root * root;
}

double plus_mean(const AbarParams& p) { return raw_moment2(p); }

double plus_degenerate_check(const AbarParams& p,
                             std::span<const double> y_grid) {
  double largest = 0.0;
  for (double y : y_grid) {
    largest = std::max(largest, plus_pdf(p, y));
  }
  return largest;
}

}  // namespace abar
