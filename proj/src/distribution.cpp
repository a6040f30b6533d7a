#include "abar/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "abar/errors.hpp"
#include "abar/numeric.hpp"
#include "detail/checks.hpp"

namespace abar {

using namespace constants;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxExp = 709.78;

// Below this a/sigma the mean is returned as its a -> 0 limit.
constexpr double kMeanSmallRatio = 1e-8;
// Below this a/sigma the MGF uses the a = 0 closed form; the neglected term
// is O((a/sigma)^2).
constexpr double kMgfSmallRatio = 1e-6;

double clamp_probability(double raw, const char* op) {
  detail::check_probability_excursion(raw, op);
  return std::clamp(raw, 0.0, 1.0);
}

// P(|X| <= y) for X ~ N(0, sigma^2 I_3): erf(z) - (2/sqrt(pi)) z exp(-z^2)
// with z = y / (sqrt(2) sigma). Near the origin both terms are ~z while the
// result is ~z^3, so a series is used there.
double maxwell_cdf(double sigma, double y) {
  const double z = y / (sqrt2 * sigma);
  if (z < 0.5) {
    // (2/sqrt(pi)) sum_{n>=1} (-1)^(n+1) 2n z^(2n+1) / (n! (2n+1))
    const double z2 = z * z;
    double power = z;  // z^(2n+1) / n!
    double sum = 0.0;
    for (int n = 1; n < 40; ++n) {
      power *= z2 / n;
      const double term = power * (2.0 * n) / (2.0 * n + 1.0);
      sum += (n % 2 == 1) ? term : -term;
      if (term < 1e-18 * std::fabs(sum)) break;
    }
    return 2.0 / sqrt_pi * sum;
  }
  return std::erf(z) - 2.0 / sqrt_pi * z * std::exp(-z * z);
}

double maxwell_survival(double sigma, double y) {
  const double z = y / (sqrt2 * sigma);
  return std::erfc(z) + 2.0 / sqrt_pi * z * std::exp(-z * z);
}

// a = 0 member of the MGF family:
//   exp(t^2/2) (1 + t^2) erfc(-t/sqrt(2)) + sqrt(2/pi) t,  t = s sigma.
double maxwell_mgf(double sigma, double s) {
  const double t = s * sigma;
  if (t <= 0.0) {
    return (1.0 + t * t) * erfcx(-t / sqrt2) + sqrt_2_over_pi * t;
  }
  const double log_main =
      0.5 * t * t + std::log1p(t * t) + std::log(std::erfc(-t / sqrt2));
  if (log_main > kMaxExp) {
    std::ostringstream msg;
    msg << "mgf: term exp(s^2 sigma^2 / 2) overflows (exponent " << log_main
        << ")";
    throw RangeError(msg.str());
  }
  return std::exp(log_main) + sqrt_2_over_pi * t;
}

void require_variate(double y, const char* op) {
  if (!std::isfinite(y) || y < 0.0) {
    std::ostringstream msg;
    msg << op << ": variate must be finite and >= 0 (got " << y << ")";
    throw DomainError(msg.str());
  }
}

}  // namespace

AbarParams::AbarParams(double a, double sigma) : a_(a), sigma_(sigma) {
  if (!std::isfinite(a) || a < 0.0) {
    std::ostringstream msg;
    msg << "AbarParams: a must be finite and >= 0 (got " << a << ")";
    throw DomainError(msg.str());
  }
  if (!std::isfinite(sigma) || !(sigma > 0.0)) {
    std::ostringstream msg;
    msg << "AbarParams: sigma must be finite and > 0 (got " << sigma << ")";
    throw DomainError(msg.str());
  }
}

double pdf_maxwell_limit(double sigma, double y) {
  if (!std::isfinite(sigma) || !(sigma > 0.0)) {
    throw DomainError("pdf_maxwell_limit: sigma must be finite and > 0");
  }
  require_variate(y, "pdf_maxwell_limit");
  const double t = y / sigma;
  return sqrt_2_over_pi * t * t / sigma * std::exp(-0.5 * t * t);
}

double pdf_gaussian_limit(const AbarParams& p, double y) {
  require_variate(y, "pdf_gaussian_limit");
  const double t = (y - p.a()) / p.sigma();
  return std::exp(-0.5 * t * t) / (sqrt_2pi * p.sigma());
}

// f(y) = exp(-(y-a)^2 / 2 sigma^2) * 2 y^2 / (sqrt(2 pi) sigma^3) * g(x),
// x = 2 a y / sigma^2, g(x) = (1 - exp(-x)) / x. This is the exp-difference
// form with exp(-(y-a)^2/2s^2) factored out; it is finite for all inputs and
// reduces continuously to the Maxwell form as a -> 0.
double pdf(const AbarParams& p, double y) {
  require_variate(y, "pdf");
  if (y == 0.0) return 0.0;
  const double a = p.a();
  const double sigma = p.sigma();
  if (a == 0.0) return pdf_maxwell_limit(sigma, y);

  const double t = y / sigma;
  if (t > 1e150) {
    return std::exp(log_pdf(p, y));
  }
  const double d = (y - a) / sigma;
  const double x = 2.0 * t * (a / sigma);
  return std::exp(-0.5 * d * d) * sqrt_2_over_pi * t * t / sigma *
         one_minus_exp_over_x(x);
}

double log_pdf(const AbarParams& p, double y) {
  require_variate(y, "log_pdf");
  if (y == 0.0) return -kInf;
  const double a = p.a();
  const double sigma = p.sigma();
  const double t = y / sigma;
  const double u = a / sigma;
  const double d = t - u;
  if (a == 0.0) {
    return std::log(sqrt_2_over_pi) + 2.0 * std::log(t) - std::log(sigma) -
           0.5 * t * t;
  }
  const double x = 2.0 * t * u;
  if (x < 1.0) {
    return -0.5 * d * d + std::log(sqrt_2_over_pi) + 2.0 * std::log(t) -
           std::log(sigma) + std::log(one_minus_exp_over_x(x));
  }
  // -(y-a)^2/2s^2 + ln y - ln(sqrt(2 pi) s a) + ln(1 - exp(-2ay/s^2))
  return -0.5 * d * d + std::log(t / u) - ln_sqrt_2pi - std::log(sigma) +
         log1mexp(x);
}

double cdf(const AbarParams& p, double y) {
  require_variate(y, "cdf");
  if (y == 0.0) return 0.0;
  const double a = p.a();
  const double sigma = p.sigma();
  if (a == 0.0) {
    return clamp_probability(maxwell_cdf(sigma, y), "cdf");
  }

  const double z1 = (a - y) / (sqrt2 * sigma);
  const double z2 = (a + y) / (sqrt2 * sigma);
  const double t = y / sigma;
  const double x = 2.0 * t * (a / sigma);
  // sigma / (sqrt(2 pi) a) * (1 - exp(-x)) = sqrt(2/pi) (y/sigma) g(x)
  const double exp_coeff = sqrt_2_over_pi * t * one_minus_exp_over_x(x);

  double raw;
  if (z1 < 1.0) {
    raw = 0.5 * (std::erfc(z1) - std::erfc(z2)) -
          exp_coeff * std::exp(-z1 * z1);
  } else {
    // Lower tail with y well below a: pull exp(-z1^2) out of every term so
    // tiny probabilities do not vanish into the difference of erfc values.
    const double bracket = 0.5 * erfcx(z1) - exp_coeff -
                           0.5 * erfcx(z2) * std::exp(-x);
    raw = std::exp(-z1 * z1) * bracket;
  }
  return clamp_probability(raw, "cdf");
}

double survival(const AbarParams& p, double y) {
  require_variate(y, "survival");
  if (y == 0.0) return 1.0;
  const double a = p.a();
  const double sigma = p.sigma();
  if (a == 0.0) {
    return clamp_probability(maxwell_survival(sigma, y), "survival");
  }
  const double z1 = (a - y) / (sqrt2 * sigma);
  const double z2 = (a + y) / (sqrt2 * sigma);
  const double t = y / sigma;
  const double x = 2.0 * t * (a / sigma);
  const double exp_coeff = sqrt_2_over_pi * t * one_minus_exp_over_x(x);
  const double raw = exp_coeff * std::exp(-z1 * z1) + 0.5 * std::erfc(-z1) +
                     0.5 * std::erfc(z2);
  return clamp_probability(raw, "survival");
}

double quantile(const AbarParams& p, double prob) {
  if (!(prob > 0.0 && prob < 1.0)) {
    std::ostringstream msg;
    msg << "quantile: probability must lie in (0, 1) (got " << prob << ")";
    throw DomainError(msg.str());
  }
  const double hi = p.a() + 40.0 * p.sigma();
  const Tolerance tol{1e-15, 1e-300};
  if (prob <= 0.5) {
    return find_root_bracketed(
        [&](double y) { return cdf(p, y) - prob; }, 0.0, hi, tol);
  }
  // Upper half: solve on the survival function; 1 - prob is exact here.
  const double upper = 1.0 - prob;
  return find_root_bracketed(
      [&](double y) { return upper - survival(p, y); }, 0.0, hi, tol);
}

double mean(const AbarParams& p) {
  const double a = p.a();
  const double sigma = p.sigma();
  const double u = a / sigma;
  if (u < kMeanSmallRatio) {
    return 2.0 * sqrt_2_over_pi * sigma;
  }
  return (a + sigma * sigma / a) * std::erf(u / sqrt2) +
         sqrt_2_over_pi * sigma * std::exp(-0.5 * u * u);
}

double raw_moment2(const AbarParams& p) {
  return 3.0 * p.sigma() * p.sigma() + p.a() * p.a();
}

// Var = 3 s^2 + a^2 - m^2 written as 3 s^2 - delta (2a + delta) with
// delta = m - a, which avoids subtracting a^2 from itself when a >> sigma.
double variance(const AbarParams& p) {
  const double a = p.a();
  const double sigma = p.sigma();
  const double u = a / sigma;
  double delta;
  if (u < kMeanSmallRatio) {
    delta = 2.0 * sqrt_2_over_pi * sigma - a;
  } else {
    const double q = std::erfc(u / sqrt2);
    delta = sigma * sigma / a * std::erf(u / sqrt2) +
            sigma * (sqrt_2_over_pi * std::exp(-0.5 * u * u) - u * q);
  }
  return 3.0 * sigma * sigma - delta * (2.0 * a + delta);
}

// With b+ = a + s sigma^2, b- = a - s sigma^2, c = sqrt(2) sigma the MGF is
//
//   M(s) = e^{s(a + s sigma^2/2)} [sigma/(sqrt(2 pi) a) e^{-b+^2/2sigma^2}
//                                 + b+/(2a) (2 - erfc(b+/c))]
//        - e^{-s(a - s sigma^2/2)} [sigma/(sqrt(2 pi) a) e^{-b-^2/2sigma^2}
//                                 - b-/(2a) erfc(b-/c)].
//
// Both Gaussian terms reduce to sigma/(sqrt(2 pi) a) e^{-a^2/2sigma^2} and
// cancel, leaving
//
//   M(s) = [b+ e^{s a + s^2 sigma^2/2} erfc(-b+/c)
//           + b- e^{-s a + s^2 sigma^2/2} erfc(b-/c)] / (2a).
//
// Each term is carried as (sign, log magnitude). When an erfc argument is
// positive the exponential is fused with it through erfcx, which turns the
// exponent into -a^2/2sigma^2 and keeps large |s| finite.
double mgf(const AbarParams& p, double s) {
  if (!std::isfinite(s)) {
    throw DomainError("mgf: argument s must be finite");
  }
  if (s == 0.0) return 1.0;
  const double a = p.a();
  const double sigma = p.sigma();
  const double u = a / sigma;
  if (u < kMgfSmallRatio) {
    return maxwell_mgf(sigma, s);
  }

  const double c = sqrt2 * sigma;
  const double b_plus = a + s * sigma * sigma;
  const double b_minus = a - s * sigma * sigma;
  const double half_u2 = 0.5 * u * u;

  struct Term {
    double sign;
    double log_mag;
    const char* name;
  };

  Term first{0.0, -kInf, "b+ exp(s (a + s sigma^2 / 2)) erfc(-b+/c)"};
  if (b_plus > 0.0) {
    first.sign = 1.0;
    first.log_mag = std::log(b_plus) + s * (a + 0.5 * s * sigma * sigma) +
                    std::log(std::erfc(-b_plus / c));
  } else if (b_plus < 0.0) {
    first.sign = -1.0;
    first.log_mag = std::log(-b_plus) + std::log(erfcx(-b_plus / c)) - half_u2;
  }

  Term second{0.0, -kInf, "b- exp(-s (a - s sigma^2 / 2)) erfc(b-/c)"};
  if (b_minus > 0.0) {
    second.sign = 1.0;
    second.log_mag = std::log(b_minus) + std::log(erfcx(b_minus / c)) - half_u2;
  } else if (b_minus < 0.0) {
    second.sign = -1.0;
    second.log_mag = std::log(-b_minus) - s * (a - 0.5 * s * sigma * sigma) +
                     std::log(std::erfc(b_minus / c));
  }

  const Term& lead = first.log_mag >= second.log_mag ? first : second;
  const double shift = lead.log_mag;
  const double combined = first.sign * std::exp(first.log_mag - shift) +
                          second.sign * std::exp(second.log_mag - shift);
  if (!(combined > 0.0)) {
    // Only reachable through total cancellation in finite precision.
    return 0.0;
  }
  const double log_result = shift + std::log(combined / (2.0 * a));
  if (log_result > kMaxExp) {
    std::ostringstream msg;
    msg << "mgf: term " << lead.name << " overflows (fused exponent "
        << log_result << ")";
    throw RangeError(msg.str());
  }
  return std::exp(log_result);
}

std::pair<double, double> mgf_derivative_check(const AbarParams& p) {
  constexpr double h = 1e-5;
  const double up = mgf(p, h);
  const double down = mgf(p, -h);
  const double centre = mgf(p, 0.0);
  return {(up - down) / (2.0 * h), (up - 2.0 * centre + down) / (h * h)};
}

}  // namespace abar
