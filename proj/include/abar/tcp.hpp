#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abar/ks.hpp"
#include "abar/random.hpp"
#include "abar/sampling.hpp"

namespace abar {

using Point3 = std::array<double, 3>;

/// Three-dimensional Thomas cluster process on the cube [-w, w]^3: Poisson
/// parents, Poisson(mean_daughters) daughters per parent, each displaced from
/// its parent by an isotropic N(0, scatter_sigma^2 I_3) vector. Daughters
/// that land outside the cube are kept.
struct TcpConfig {
  double box_half_width = 10.0;
  double parent_intensity = 0.005;
  double mean_daughters = 200.0;
  double scatter_sigma = 1.5;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  double volume() const;
  /// Throws InputError unless every field is finite and positive and the
  /// expected parent count is at least 1.
  void validate() const;
};

struct Daughter {
  std::size_t parent_index;
  Point3 position;
};

struct TcpRealization {
  std::vector<Point3> parents;
  std::vector<Daughter> daughters;
  std::vector<std::size_t> daughters_per_parent;
  Point3 reference{0.0, 0.0, 0.0};
};

/// Draw order: parent count, parent coordinates (x, y, z per parent), then
/// per parent its daughter count followed by its displacements.
TcpRealization generate_tcp(const TcpConfig& cfg);

/// Distances from the origin to n daughters of one cluster centred at
/// (center_distance, 0, 0): Abar(center_distance, scatter_sigma) draws.
SampleBatch cluster_distance_samples(double center_distance,
                                     double scatter_sigma, std::size_t n,
                                     RandomStream& stream);

inline constexpr std::size_t kMinClusterDaughters = 30;
inline constexpr double kClusterPassFraction = 0.95;

struct ClusterCheck {
  std::size_t parent_index = 0;
  double a = 0.0;
  std::size_t n = 0;
  KsResult ks;
  bool fault_injected = false;
};

struct TcpReport {
  TcpConfig config;
  std::vector<ClusterCheck> clusters;
  bool overall_pass = false;
};

/// KS test of daughter-to-reference distances against
/// Abar(|parent - reference|, scatter_sigma) for the first `clusters_to_test`
/// parents with at least 30 daughters. `fault_cluster` (an index into the
/// tested list) shifts that cluster's distances by +scatter_sigma before
/// testing. Overall pass iff at least 95% of clusters pass.
TcpReport validate_realization(const TcpRealization& realization,
                               const TcpConfig& cfg,
                               std::size_t clusters_to_test,
                               std::optional<std::size_t> fault_cluster =
                                   std::nullopt);

TcpReport validate_application2(const TcpConfig& cfg,
                                std::size_t clusters_to_test,
                                std::optional<std::size_t> fault_cluster =
                                    std::nullopt);

/// {config, clusters: [{parent_index, a, n, D, threshold, pass, fault_injected}], overall_pass}
std::string to_json(const TcpReport& report);

/// Daughter table with columns x, y, z, parent_index.
std::string to_csv(const TcpRealization& realization, const TcpConfig& cfg);

}  // namespace abar
