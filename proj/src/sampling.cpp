#include "abar/sampling.hpp"

#include <cmath>
#include <sstream>
#include <thread>

#include "abar/errors.hpp"
#include "abar/format.hpp"

namespace abar {

double MeanVector3::norm() const { return std::hypot(a1, a2, a3); }

const char* to_string(Family family) {
  return family == Family::abar ? "abar" : "abar_plus";
}

const char* to_string(SampleMethod method) {
  return method == SampleMethod::norm3 ? "norm3" : "inverse_cdf";
}

Family parse_family(const std::string& text) {
  if (text == "abar") return Family::abar;
  if (text == "abar_plus") return Family::abar_plus;
  throw InputError("unknown family '" + text + "' (expected abar or abar_plus)");
}

SampleMethod parse_method(const std::string& text) {
  if (text == "norm3") return SampleMethod::norm3;
  if (text == "inverse_cdf") return SampleMethod::inverse_cdf;
  throw InputError("unknown sampling method '" + text +
                   "' (expected norm3 or inverse_cdf)");
}

namespace {

void require_count(std::size_t n) {
  if (n == 0) throw InputError("sample size n must be >= 1");
}

void require_sigma(double sigma) {
  if (!std::isfinite(sigma) || !(sigma > 0.0)) {
    throw DomainError("sampling: sigma must be finite and > 0");
  }
}

void require_mean(const MeanVector3& m) {
  if (!std::isfinite(m.a1) || !std::isfinite(m.a2) || !std::isfinite(m.a3)) {
    throw DomainError("sampling: mean vector components must be finite");
  }
}

SampleBatch make_batch(Family family, const AbarParams& p, SampleMethod method,
                       const RandomStream& stream) {
  SampleBatch batch;
  batch.family = family;
  batch.params = p;
  batch.method = method;
  batch.seed = stream.seed();
  batch.stream_id = stream.stream_id();
  return batch;
}

double norm3_draw(const MeanVector3& m, double sigma, RandomStream& stream) {
  const double y1 = gaussian_draw(stream, m.a1, sigma);
  const double y2 = gaussian_draw(stream, m.a2, sigma);
  const double y3 = gaussian_draw(stream, m.a3, sigma);
  return std::sqrt(y1 * y1 + y2 * y2 + y3 * y3);
}

}  // namespace

SampleBatch sample_norm3(const MeanVector3& m, double sigma, std::size_t n,
                         RandomStream& stream) {
  require_sigma(sigma);
  require_mean(m);
  require_count(n);
  SampleBatch batch = make_batch(Family::abar, AbarParams(m.norm(), sigma),
                                 SampleMethod::norm3, stream);
  if (m.a2 != 0.0 || m.a3 != 0.0 || m.a1 < 0.0) batch.mean_vector = m;
  batch.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    batch.values.push_back(norm3_draw(m, sigma, stream));
  }
  return batch;
}

SampleBatch sample_norm3_rotated(const MeanVector3& m, double sigma,
                                 std::size_t n, RandomStream& stream) {
  require_mean(m);
  return sample_norm3(MeanVector3{m.norm(), 0.0, 0.0}, sigma, n, stream);
}

std::vector<double> inverse_cdf_values(const AbarParams& p,
                                       std::span<const double> uniforms) {
  std::vector<double> values;
  values.reserve(uniforms.size());
  for (double u : uniforms) values.push_back(quantile(p, u));
  return values;
}

SampleBatch sample_inverse_cdf(const AbarParams& p, std::size_t n,
                               RandomStream& stream) {
  require_count(n);
  SampleBatch batch =
      make_batch(Family::abar, p, SampleMethod::inverse_cdf, stream);
  batch.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    batch.values.push_back(quantile(p, stream.uniform()));
  }
  return batch;
}

SampleBatch sample_plus(const AbarParams& p, std::size_t n,
                        RandomStream& stream) {
  SampleBatch batch =
      sample_norm3(MeanVector3{p.a(), 0.0, 0.0}, p.sigma(), n, stream);
  batch.family = Family::abar_plus;
  for (double& v : batch.values) v *= v;
  return batch;
}

SampleBatch sample(Family family, const AbarParams& p, SampleMethod method,
                   std::size_t n, RandomStream& stream) {
  if (family == Family::abar_plus) {
    if (method == SampleMethod::norm3) return sample_plus(p, n, stream);
    SampleBatch batch = sample_inverse_cdf(p, n, stream);
    batch.family = Family::abar_plus;
    for (double& v : batch.values) v *= v;
    return batch;
  }
  if (method == SampleMethod::norm3) {
    return sample_norm3(MeanVector3{p.a(), 0.0, 0.0}, p.sigma(), n, stream);
  }
  return sample_inverse_cdf(p, n, stream);
}

SampleBatch sample_sharded(Family family, const AbarParams& p,
                           SampleMethod method, std::size_t n,
                           std::uint64_t seed, std::size_t shards) {
  require_count(n);
  if (shards == 0) throw InputError("sample_sharded: shards must be >= 1");
  if (shards > n) shards = n;

  std::vector<std::vector<double>> parts(shards);
  {
    std::vector<std::jthread> workers;
    workers.reserve(shards);
    for (std::size_t i = 0; i < shards; ++i) {
      const std::size_t count = n / shards + (i < n % shards ? 1 : 0);
      workers.emplace_back([&, i, count] {
        RandomStream stream(seed, i);
        parts[i] = sample(family, p, method, count, stream).values;
      });
    }
  }

  RandomStream first(seed, 0);
  SampleBatch batch = make_batch(family, p, method, first);
  batch.values.reserve(n);
  for (const auto& part : parts) {
    batch.values.insert(batch.values.end(), part.begin(), part.end());
  }
  return batch;
}

std::string to_csv(const SampleBatch& batch) {
  std::ostringstream out;
  out << "# family=" << to_string(batch.family)
      << " a=" << format_shortest(batch.params.a())
      << " sigma=" << format_shortest(batch.params.sigma())
      << " method=" << to_string(batch.method) << " seed=" << batch.seed
      << " stream_id=" << batch.stream_id << " n=" << batch.n() << "\n";
  if (batch.mean_vector) {
    out << "# mean_vector=" << format_shortest(batch.mean_vector->a1) << ","
        << format_shortest(batch.mean_vector->a2) << ","
        << format_shortest(batch.mean_vector->a3) << "\n";
  }
  out << "value\n";
  for (double v : batch.values) out << format_shortest(v) << "\n";
  return out.str();
}

}  // namespace abar
