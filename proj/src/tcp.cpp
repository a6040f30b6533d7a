#include "abar/tcp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "abar/distribution.hpp"
#include "abar/errors.hpp"
#include "abar/format.hpp"

namespace abar {

double TcpConfig::volume() const {
  const double side = 2.0 * box_half_width;
  return side * side * side;
}

void TcpConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(box_half_width)) {
    throw InputError("tcp: box_half_width must be finite and > 0");
  }
  if (!positive(parent_intensity)) {
    throw InputError("tcp: parent_intensity must be finite and > 0");
  }
  if (!positive(mean_daughters)) {
    throw InputError("tcp: mean_daughters must be finite and > 0");
  }
  if (!positive(scatter_sigma)) {
    throw InputError("tcp: scatter_sigma must be finite and > 0");
  }
  if (parent_intensity * volume() < 1.0) {
    std::ostringstream msg;
    msg << "tcp: expected parent count parent_intensity * (2w)^3 = "
        << parent_intensity * volume() << " is below 1";
    throw InputError(msg.str());
  }
}

TcpRealization generate_tcp(const TcpConfig& cfg) {
  cfg.validate();
  RandomStream stream(cfg.seed, cfg.stream_id);
  TcpRealization out;

  const std::uint64_t parent_count =
      stream.poisson(cfg.parent_intensity * cfg.volume());
  const double w = cfg.box_half_width;
  out.parents.reserve(parent_count);
  for (std::uint64_t i = 0; i < parent_count; ++i) {
    Point3 p;
    for (double& c : p) c = -w + 2.0 * w * stream.uniform();
    out.parents.push_back(p);
  }

  out.daughters_per_parent.reserve(parent_count);
  for (std::size_t i = 0; i < out.parents.size(); ++i) {
    const std::uint64_t count = stream.poisson(cfg.mean_daughters);
    out.daughters_per_parent.push_back(count);
    for (std::uint64_t k = 0; k < count; ++k) {
      Point3 q;
      for (std::size_t c = 0; c < 3; ++c) {
        q[c] = gaussian_draw(stream, out.parents[i][c], cfg.scatter_sigma);
      }
      out.daughters.push_back({i, q});
    }
  }
  return out;
}

SampleBatch cluster_distance_samples(double center_distance,
                                     double scatter_sigma, std::size_t n,
                                     RandomStream& stream) {
  const AbarParams params(center_distance, scatter_sigma);
  if (n == 0) throw InputError("cluster_distance_samples: n must be >= 1");

  SampleBatch batch;
  batch.family = Family::abar;
  batch.params = params;
  batch.method = SampleMethod::norm3;
  batch.seed = stream.seed();
  batch.stream_id = stream.stream_id();
  batch.values.reserve(n);
  const Point3 centre{center_distance, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    double squared = 0.0;
    for (double c : centre) {
      const double coord = gaussian_draw(stream, c, scatter_sigma);
      squared += coord * coord;
    }
    batch.values.push_back(std::sqrt(squared));
  }
  return batch;
}

namespace {

double distance(const Point3& p, const Point3& q) {
  return std::hypot(p[0] - q[0], p[1] - q[1], p[2] - q[2]);
}

}  // namespace

TcpReport validate_realization(const TcpRealization& realization,
                               const TcpConfig& cfg,
                               std::size_t clusters_to_test,
                               std::optional<std::size_t> fault_cluster) {
  if (clusters_to_test == 0) {
    throw InputError("tcp-validate: at least one cluster must be tested");
  }

  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < realization.parents.size(); ++i) {
    if (realization.daughters_per_parent[i] >= kMinClusterDaughters) {
      eligible.push_back(i);
    }
  }
  if (eligible.size() < clusters_to_test) {
    std::ostringstream msg;
    msg << "tcp-validate: only " << eligible.size() << " of "
        << realization.parents.size() << " clusters have at least "
        << kMinClusterDaughters << " daughters but " << clusters_to_test
        << " were requested; raise mean_daughters (currently "
        << cfg.mean_daughters << ") or parent_intensity";
    throw InputError(msg.str());
  }
  if (fault_cluster && *fault_cluster >= clusters_to_test) {
    throw InputError("tcp-validate: fault cluster index out of range");
  }
  eligible.resize(clusters_to_test);

  std::vector<std::vector<double>> distances(realization.parents.size());
  for (const auto& d : realization.daughters) {
    distances[d.parent_index].push_back(distance(d.position, realization.reference));
  }

  TcpReport report;
  report.config = cfg;
  std::size_t passes = 0;
  for (std::size_t k = 0; k < eligible.size(); ++k) {
    const std::size_t parent = eligible[k];
    std::vector<double> sample = distances[parent];
    ClusterCheck check;
    check.parent_index = parent;
    check.a = distance(realization.parents[parent], realization.reference);
    check.n = sample.size();
    if (fault_cluster && *fault_cluster == k) {
      check.fault_injected = true;
      for (double& v : sample) v += cfg.scatter_sigma;
    }
    std::sort(sample.begin(), sample.end());
    const AbarParams params(check.a, cfg.scatter_sigma);
    check.ks = ks_statistic(sample, [&](double y) { return cdf(params, y); });
    if (check.ks.passes()) ++passes;
    report.clusters.push_back(check);
  }
  report.overall_pass = static_cast<double>(passes) >=
                        kClusterPassFraction * static_cast<double>(eligible.size());
  return report;
}

TcpReport validate_application2(const TcpConfig& cfg,
                                std::size_t clusters_to_test,
                                std::optional<std::size_t> fault_cluster) {
  if (clusters_to_test == 0) {
    throw InputError("tcp-validate: at least one cluster must be tested");
  }
  return validate_realization(generate_tcp(cfg), cfg, clusters_to_test,
                              fault_cluster);
}

std::string to_json(const TcpReport& report) {
  nlohmann::ordered_json config = {
      {"box_half_width", report.config.box_half_width},
      {"parent_intensity", report.config.parent_intensity},
      {"mean_daughters", report.config.mean_daughters},
      {"scatter_sigma", report.config.scatter_sigma},
      {"seed", report.config.seed},
      {"stream_id", report.config.stream_id}};
  nlohmann::ordered_json clusters = nlohmann::ordered_json::array();
  for (const auto& c : report.clusters) {
    clusters.push_back({{"parent_index", c.parent_index},
                        {"a", c.a},
                        {"n", c.n},
                        {"D", c.ks.statistic},
                        {"threshold", c.ks.threshold},
                        {"pass", c.ks.passes()},
                        {"fault_injected", c.fault_injected}});
  }
  nlohmann::ordered_json out = {{"config", config},
                                {"clusters", clusters},
                                {"overall_pass", report.overall_pass}};
  return out.dump(2) + "\n";
}

std::string to_csv(const TcpRealization& realization, const TcpConfig& cfg) {
  std::ostringstream out;
  out << "# tcp box_half_width=" << format_shortest(cfg.box_half_width)
      << " parent_intensity=" << format_shortest(cfg.parent_intensity)
      << " mean_daughters=" << format_shortest(cfg.mean_daughters)
      << " scatter_sigma=" << format_shortest(cfg.scatter_sigma)
      << " seed=" << cfg.seed << " stream_id=" << cfg.stream_id
      << " parents=" << realization.parents.size() << "\n";
  out << "x,y,z,parent_index\n";
  for (const auto& d : realization.daughters) {
    out << format_shortest(d.position[0]) << ","
        << format_shortest(d.position[1]) << ","
        << format_shortest(d.position[2]) << "," << d.parent_index << "\n";
  }
  return out.str();
}

}  // namespace abar
