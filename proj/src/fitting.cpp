#include "abar/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "abar/errors.hpp"
#include "abar/format.hpp"
#include "abar/numeric.hpp"

namespace abar {

const char* to_string(FitMethod method) {
  return method == FitMethod::moments ? "moments" : "mle";
}

FitMethod parse_fit_method(const std::string& text) {
  if (text == "moments") return FitMethod::moments;
  if (text == "mle") return FitMethod::mle;
  throw InputError("unknown fit method '" + text + "' (expected moments or mle)");
}

namespace {

void require_fit_samples(std::span<const double> samples) {
  if (samples.size() < kMinFitSamples) {
    std::ostringstream msg;
    msg << "fit: at least " << kMinFitSamples << " samples required (got "
        << samples.size() << ")";
    throw InputError(msg.str());
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i]) || !(samples[i] > 0.0)) {
      std::ostringstream msg;
      msg << "fit: sample " << i << " is not a finite positive value ("
          << samples[i] << ")";
      throw InputError(msg.str());
    }
  }
}

}  // namespace

double log_likelihood(const AbarParams& p, std::span<const double> samples) {
  if (samples.size() < 2) {
    throw InputError("log_likelihood: at least 2 samples required");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double y = samples[i];
    if (!std::isfinite(y) || !(y > 0.0)) {
      std::ostringstream msg;
      msg << "log_likelihood: sample " << i << " = " << y
          << " has zero density (likelihood is -infinity)";
      throw DomainError(msg.str());
    }
    total += log_pdf(p, y);
  }
  return total;
}

FitResult fit_moments_from(double m1, double m2) {
  if (!std::isfinite(m1) || !std::isfinite(m2) || !(m2 > 0.0) || !(m1 > 0.0)) {
    throw InputError("fit_moments: sample moments must be finite and positive");
  }

  FitResult result;
  result.method = FitMethod::moments;
  result.log_likelihood = std::numeric_limits<double>::quiet_NaN();

  auto sigma_of = [m2](double a) {
    return std::sqrt(std::max(m2 - a * a, 1e-12 * m2) / 3.0);
  };
  std::size_t evaluations = 0;
  auto gap = [&](double a) {
    ++evaluations;
    return mean(AbarParams(a, sigma_of(a))) - m1;
  };

  const double hi = std::sqrt(m2 * (1.0 - 1e-12));
  const double at_zero = gap(0.0);
  if (at_zero >= 0.0) {
    result.a_hat = 0.0;
    result.sigma_hat = sigma_of(0.0);
    result.iterations = evaluations;
    result.converged = at_zero == 0.0;
    if (!result.converged) {
      result.diagnostic =
          "sample mean is below the a = 0 model mean for this second moment; "
          "returning the boundary solution a = 0";
    }
    return result;
  }
  if (gap(hi) <= 0.0) {
    result.a_hat = hi;
    result.sigma_hat = sigma_of(hi);
    result.iterations = evaluations;
    result.converged = false;
    result.diagnostic =
        "sample mean reaches sqrt(m2); returning the sigma -> 0 boundary";
    return result;
  }

  const double a = find_root_bracketed(gap, 0.0, hi,
                                       Tolerance{1e-14, 1e-15 * std::sqrt(m2)});
  result.a_hat = a;
  result.sigma_hat = sigma_of(a);
  result.iterations = evaluations;
  result.converged = true;
  return result;
}

FitResult fit_moments(std::span<const double> samples) {
  require_fit_samples(samples);
  double s1 = 0.0;
  double s2 = 0.0;
  for (double y : samples) {
    s1 += y;
    s2 += y * y;
  }
  const double n = static_cast<double>(samples.size());
  FitResult result = fit_moments_from(s1 / n, s2 / n);
  result.log_likelihood = log_likelihood(result.params(), samples);
  return result;
}

namespace {

using Point = std::array<double, 2>;  // (a, ln sigma); a enters as |a|

struct Vertex {
  Point x;
  double cost;
};

}  // namespace

FitResult fit_mle(std::span<const double> samples,
                  std::optional<AbarParams> init) {
  require_fit_samples(samples);
  const AbarParams start = init ? *init : fit_moments(samples).params();

  std::size_t evaluations = 0;
  // The density is even in a, so optimising over a in R and reading |a|
  // enforces a >= 0 without a penalty term.
  auto cost = [&](const Point& x) {
    ++evaluations;
    const double sigma = std::exp(x[1]);
    if (!std::isfinite(sigma) || !(sigma > 0.0) || !std::isfinite(x[0])) {
      return std::numeric_limits<double>::infinity();
    }
    const double value =
        -log_likelihood(AbarParams(std::fabs(x[0]), sigma), samples);
    return std::isfinite(value) ? value
                                : std::numeric_limits<double>::infinity();
  };

  const double step_a = 0.02 * (start.a() + start.sigma());
  const double step_log_sigma = 0.02;
  std::array<Vertex, 3> simplex;
  const Point x0 = {start.a(), std::log(start.sigma())};
  simplex[0] = {x0, cost(x0)};
  const Point x1 = {x0[0] + step_a, x0[1]};
  simplex[1] = {x1, cost(x1)};
  const Point x2 = {x0[0], x0[1] + step_log_sigma};
  simplex[2] = {x2, cost(x2)};

  auto order = [&] {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& l, const Vertex& r) { return l.cost < r.cost; });
  };
  auto small_enough = [&] {
    const Point& best = simplex[0].x;
    const double scale_a = std::fabs(best[0]) + std::exp(best[1]);
    for (std::size_t i = 1; i < simplex.size(); ++i) {
      if (std::fabs(simplex[i].x[0] - best[0]) > 1e-8 * scale_a) return false;
      if (std::fabs(simplex[i].x[1] - best[1]) > 1e-8) return false;
    }
    return true;
  };
  auto along = [](const Point& from, const Point& to, double t) {
    return Point{from[0] + t * (to[0] - from[0]),
                 from[1] + t * (to[1] - from[1])};
  };

  bool converged = false;
  order();
  while (evaluations < kMleEvaluationBudget) {
    if (small_enough()) {
      converged = true;
      break;
    }
    const Point centroid = {0.5 * (simplex[0].x[0] + simplex[1].x[0]),
                            0.5 * (simplex[0].x[1] + simplex[1].x[1])};
    Vertex& worst = simplex[2];

    const Point reflected = along(centroid, worst.x, -1.0);
    const double reflected_cost = cost(reflected);
    if (reflected_cost < simplex[0].cost) {
      const Point expanded = along(centroid, worst.x, -2.0);
      const double expanded_cost = cost(expanded);
      worst = expanded_cost < reflected_cost ? Vertex{expanded, expanded_cost}
                                             : Vertex{reflected, reflected_cost};
    } else if (reflected_cost < simplex[1].cost) {
      worst = {reflected, reflected_cost};
    } else {
      const bool outside = reflected_cost < worst.cost;
      const Point contracted =
          outside ? along(centroid, reflected, 0.5) : along(centroid, worst.x, 0.5);
      const double contracted_cost = cost(contracted);
      if (contracted_cost < std::min(reflected_cost, worst.cost)) {
        worst = {contracted, contracted_cost};
      } else {
        for (std::size_t i = 1; i < simplex.size(); ++i) {
          simplex[i].x = along(simplex[0].x, simplex[i].x, 0.5);
          simplex[i].cost = cost(simplex[i].x);
        }
      }
    }
    order();
  }
  if (!converged && small_enough()) converged = true;

  FitResult result;
  result.method = FitMethod::mle;
  result.a_hat = std::fabs(simplex[0].x[0]);
  result.sigma_hat = std::exp(simplex[0].x[1]);
  result.log_likelihood = -simplex[0].cost;
  result.iterations = evaluations;
  result.converged = converged;
  if (!converged) {
    std::ostringstream msg;
    msg << "evaluation budget of " << kMleEvaluationBudget
        << " exhausted; returning the best vertex";
    result.diagnostic = msg.str();
  }
  return result;
}

std::string to_json(const FitResult& fit) {
  nlohmann::ordered_json out = {{"a_hat", fit.a_hat},
                                {"sigma_hat", fit.sigma_hat},
                                {"method", to_string(fit.method)},
                                {"log_likelihood", fit.log_likelihood},
                                {"iterations", fit.iterations},
                                {"converged", fit.converged}};
  if (!fit.diagnostic.empty()) out["diagnostic"] = fit.diagnostic;
  return out.dump() + "\n";
}

std::vector<double> parse_samples_csv(const std::string& text) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    double v;
    if (!parse_double(line, v)) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      std::ostringstream msg;
      msg << "line " << line_no << ": not a number: '" << line << "'";
      throw InputError(msg.str());
    }
    header_allowed = false;
    if (!std::isfinite(v) || !(v > 0.0)) {
      std::ostringstream msg;
      msg << "line " << line_no << ": value " << line
          << " is not a finite positive number";
      throw InputError(msg.str());
    }
    values.push_back(v);
  }
  return values;
}

}  // namespace abar
