#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abar/distribution.hpp"
#include "abar/random.hpp"

namespace abar {

/// Component means (a1, a2, a3) of the three Gaussians whose norm is Abar.
struct MeanVector3 {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;

  /// Euclidean norm; this is the Abar `a` parameter.
  double norm() const;
};

enum class Family { abar, abar_plus };
enum class SampleMethod { norm3, inverse_cdf };

const char* to_string(Family family);
const char* to_string(SampleMethod method);
Family parse_family(const std::string& text);
SampleMethod parse_method(const std::string& text);

/// A batch of draws together with everything needed to regenerate it.
/// Regenerating from (family, params, method, seed, stream_id, n) with a
/// fresh stream is bit-identical.
struct SampleBatch {
  std::vector<double> values;
  Family family = Family::abar;
  AbarParams params{0.0, 1.0};
  SampleMethod method = SampleMethod::norm3;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  /// Set when norm3 drew from an explicit, unrotated mean vector.
  std::optional<MeanVector3> mean_vector;

  std::size_t n() const { return values.size(); }
};

/// |Y| with Y_i ~ N(m_i, sigma^2) independent, drawn in the order Y1, Y2, Y3.
SampleBatch sample_norm3(const MeanVector3& m, double sigma, std::size_t n,
                         RandomStream& stream);

/// Same as sample_norm3 after rotating the mean onto (|m|, 0, 0).
SampleBatch sample_norm3_rotated(const MeanVector3& m, double sigma,
                                 std::size_t n, RandomStream& stream);

/// quantile(U) for U uniform on (0, 1).
SampleBatch sample_inverse_cdf(const AbarParams& p, std::size_t n,
                               RandomStream& stream);

/// Maps caller-provided uniforms through the quantile function.
std::vector<double> inverse_cdf_values(const AbarParams& p,
                                       std::span<const double> uniforms);

/// Squared norms with the rotated mean: Abar+ draws.
SampleBatch sample_plus(const AbarParams& p, std::size_t n,
                        RandomStream& stream);

/// Dispatches on family and method. The Abar+ inverse-CDF path squares
/// Abar quantiles.
SampleBatch sample(Family family, const AbarParams& p, SampleMethod method,
                   std::size_t n, RandomStream& stream);

/// Splits n across `shards` workers; worker i uses stream (seed, i) and
/// draws either floor(n / shards) or one more (the first n % shards
/// workers). The result is the concatenation in stream_id order and does
/// not depend on thread scheduling.
SampleBatch sample_sharded(Family family, const AbarParams& p,
                           SampleMethod method, std::size_t n,
                           std::uint64_t seed, std::size_t shards);

/// CSV text: `#` provenance comments, a `value` header row, one shortest
/// round-trip decimal per line.
std::string to_csv(const SampleBatch& batch);

}  // namespace abar
