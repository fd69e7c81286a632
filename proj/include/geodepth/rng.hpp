#pragma once

#include <array>
#include <cstdint>

namespace geodepth {

/// xoshiro256** seeded through SplitMix64. Every variate is derived from the
/// raw 64-bit output with explicit arithmetic (no <random> distributions), so a
/// seed reproduces the same stream on every platform and standard library.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0);

  std::uint64_t seed() const noexcept { return seed_; }

  /// Independent stream for task `index` (replication, thread chunk, ...).
  /// Depends only on (seed, index), never on how many draws were consumed.
  RngStream substream(std::uint64_t index) const;

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1), safe for logarithms.
  double uniform_open();
  /// Standard normal via the Marsaglia polar method (pairs cached).
  double normal();
  /// Gamma(shape, 1) via Marsaglia-Tsang.
  double gamma(double shape);
  double beta(double a, double b);
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> s_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace geodepth
