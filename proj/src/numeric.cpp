#include "abar/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace abar {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_finite(double x, const char* op) {
  if (!std::isfinite(x)) {
    std::ostringstream msg;
    msg << op << ": argument must be finite (got " << x << ")";
    throw DomainError(msg.str());
  }
}

// exp(x*x) with the rounding error of the square folded back in, so the
// result keeps full relative precision even when x*x is around 700.
double exp_square(double x) {
  const double hi = x * x;
  const double lo = std::fma(x, x, -hi);
  return std::exp(hi) * (1.0 + lo);
}

// Laplace continued fraction erfc(x) = exp(-x^2)/sqrt(pi) / (x + 1/2/(x + 1/(x + 3/2/(x + ...)))),
// evaluated bottom-up. Depth chosen so the tail is below double precision
// for x >= 5.
double erfcx_continued_fraction(double x) {
  const int depth = 16 + static_cast<int>(4000.0 / (x * x));
  double t = x;
  for (int k = depth; k >= 1; --k) {
    t = x + 0.5 * k / t;
  }
  return 1.0 / (constants::sqrt_pi * t);
}

}  // namespace

void Tolerance::validate() const {
  if (!std::isfinite(rel) || !std::isfinite(abs) || rel < 0.0 || abs < 0.0) {
    throw DomainError("Tolerance: rel and abs must be finite and >= 0");
  }
  if (rel == 0.0 && abs == 0.0) {
    throw DomainError("Tolerance: rel and abs must not both be zero");
  }
}

double Tolerance::bound(double magnitude) const {
  return std::max(abs, rel * std::fabs(magnitude));
}

// Backed by the C library; the wrapper adds the domain check.
double erfc(double x) {
  require_finite(x, "erfc");
  return std::erfc(x);
}

double erf(double x) {
  require_finite(x, "erf");
  return std::erf(x);
}

double erfcx(double x) {
  require_finite(x, "erfcx");
  if (x < -26.6) {
    std::ostringstream msg;
    msg << "erfcx: exp(x^2) overflows for x = " << x;
    throw RangeError(msg.str());
  }
  if (x < 5.0) {
    return exp_square(x) * std::erfc(x);
  }
  return erfcx_continued_fraction(x);
}

double log1mexp(double x) {
  if (!(x > 0.0)) {
    if (x == 0.0) return -std::numeric_limits<double>::infinity();
    throw DomainError("log1mexp: argument must be >= 0");
  }
  if (x < 0.6931471805599453) {
    return std::log(-std::expm1(-x));
  }
  return std::log1p(-std::exp(-x));
}

double one_minus_exp_over_x(double x) {
  if (x < 1e-5) {
    return 1.0 - x * (0.5 - x / 6.0);
  }
  return -std::expm1(-x) / x;
}

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the centre.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  double abs_value;

  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const RealFunction& f, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  auto eval = [&](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "integrate_adaptive: integrand is not finite at x = " << x;
      throw NumericalError(msg.str(), std::numeric_limits<double>::quiet_NaN(),
                           std::numeric_limits<double>::infinity());
    }
    return v;
  };

  const double fc = eval(centre);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  double abs_sum = std::fabs(kronrod);
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double f1 = eval(centre - dx);
    const double f2 = eval(centre + dx);
    kronrod += kKronrodWeights[j] * (f1 + f2);
    abs_sum += kKronrodWeights[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) {
      gauss += kGaussWeights[j / 2] * (f1 + f2);
    }
  }
  return Segment{lo, hi, kronrod * half, std::fabs((kronrod - gauss) * half),
                 abs_sum * std::fabs(half)};
}

}  // namespace

QuadratureResult integrate_adaptive_ex(const RealFunction& f, double lo,
                                       double hi, const Tolerance& tol,
                                       std::size_t max_intervals) {
  tol.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("integrate_adaptive: requires finite lo < hi");
  }

  std::priority_queue<Segment> heap;
  const Segment first = gauss_kronrod(f, lo, hi);
  heap.push(first);
  double value = first.value;
  double error = first.error;
  double abs_value = first.abs_value;

  // Below ~50 ulps of the absolute integral the error estimate is roundoff.
  auto target = [&] {
    return std::max(tol.bound(value), 50.0 * kEps * abs_value);
  };

  while (error > target()) {
    if (heap.size() >= max_intervals) {
      std::ostringstream msg;
      msg << "integrate_adaptive: no convergence after " << heap.size()
          << " subintervals (estimate " << value << ", error " << error << ")";
      throw NumericalError(msg.str(), value, error);
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Segment left = gauss_kronrod(f, worst.lo, mid);
    const Segment right = gauss_kronrod(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    abs_value += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the segments to shed the drift of the running updates.
  QuadratureResult result;
  result.intervals = heap.size();
  std::vector<Segment> segments;
  segments.reserve(heap.size());
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  std::sort(segments.begin(), segments.end(),
            [](const Segment& x, const Segment& y) { return x.lo < y.lo; });
  for (const auto& s : segments) {
    result.value += s.value;
    result.error += s.error;
  }
  return result;
}

double integrate_adaptive(const RealFunction& f, double lo, double hi,
                          const Tolerance& tol) {
  return integrate_adaptive_ex(f, lo, hi, tol).value;
}

double find_root_bracketed(const RealFunction& f, double lo, double hi,
                           const Tolerance& tol) {
  tol.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("find_root_bracketed: requires finite lo < hi");
  }

  auto eval = [&](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "find_root_bracketed: function is not finite at x = " << x;
      throw NumericalError(msg.str(), x,
                           std::numeric_limits<double>::infinity());
    }
    return v;
  };

  double a = lo;
  double b = hi;
  double fa = eval(a);
  double fb = eval(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream msg;
    msg << "find_root_bracketed: f(" << lo << ") = " << fa << " and f(" << hi
        << ") = " << fb << " have the same sign";
    throw BracketError(msg.str());
  }

  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;

  for (int iter = 0; iter < kRootMaxIterations; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }

    const double tol1 = 2.0 * kEps * std::fabs(b) + 0.5 * tol.bound(b);
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) {
      return std::clamp(b, lo, hi);
    }

    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      const double s = fb / fa;
      double p;
      double q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q),
                             std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }

    a = b;
    fa = fb;
    b += std::fabs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = eval(b);
  }

  std::ostringstream msg;
  msg << "find_root_bracketed: no convergence in " << kRootMaxIterations
      << " iterations";
  throw NumericalError(msg.str(), std::clamp(b, lo, hi), std::fabs(c - b));
}

}  // namespace abar
