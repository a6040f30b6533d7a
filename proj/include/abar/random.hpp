#pragma once

#include <array>
#include <cstdint>

namespace abar {

/// Counter-based random stream built on Philox4x32-10 (Salmon et al., the
/// Random123 generator). The 64-bit seed is the Philox key; the 128-bit
/// counter holds a 64-bit block index in its low half and the 64-bit
/// stream_id in its high half, so every (seed, stream_id) pair addresses a
/// disjoint, platform-independent sequence.
///
/// Output order: each counter block yields four 32-bit words w0..w3, consumed
/// as the 64-bit values (w1 << 32 | w0) then (w3 << 32 | w2).
///
/// A stream is single-owner. Parallel work gets one stream per worker with a
/// distinct stream_id.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();

  /// Standard normal via the Marsaglia polar method; the second variate of
  /// each accepted pair is cached for the next call.
  double standard_normal();

  /// Poisson(mean) count. Multiplication method below mean 12, Hormann's
  /// PTRS transformed rejection above.
  std::uint64_t poisson(double mean);

  /// Raw Philox4x32-10 block function, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> philox_block(
      std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// One N(mean, sigma^2) draw. Throws DomainError unless sigma > 0.
double gaussian_draw(RandomStream& stream, double mean, double sigma);

}  // namespace abar
