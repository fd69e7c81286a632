#pragma once

// Competitor depths: projection outlyingness depth PD1, random-projection
// depth PD2 and an angular Tukey depth approximation on the sphere.
// Projections use the plain coordinate inner product, also for weighted specs.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "geodepth/dataset.hpp"

namespace geodepth {

inline constexpr std::size_t kDefaultDirectionCount = 500;

/// K unit vectors in R^k, stored row-major.
class DirectionSet {
 public:
  /// Normalized standard Gaussian vectors.
  static DirectionSet random(std::size_t dim, std::size_t count, std::uint64_t seed);
  /// Normalizes each vector; throws on zero vectors or mixed lengths.
  static DirectionSet from_vectors(const std::vector<std::vector<double>>& vectors);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return data_.size() / dim_; }
  std::span<const double> direction(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * dim_, dim_);
  }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }

  /// A copy with `extra` (normalized) appended.
  DirectionSet with(std::span<const double> extra) const;

 private:
  DirectionSet(std::size_t dim, std::vector<double> data, std::optional<std::uint64_t> seed);
  std::size_t dim_;
  std::vector<double> data_;
  std::optional<std::uint64_t> seed_;
};

struct Pd1Result {
  double value = 1.0;
  double outlyingness = 0.0;
  /// Directions with zero MAD, left out of the maximum.
  std::size_t skipped_directions = 0;
};

/// Median and MAD of the projected sample per direction, reused across queries.
class ProjectionOutlyingness {
 public:
  ProjectionOutlyingness(const Dataset& ds, const DirectionSet& dirs);
  /// OU = max_u |<p,u> - med_u| / MAD_u, PD1 = 1 / (1 + OU). Throws
  /// Errc::ZeroMAD when every direction is degenerate.
  Pd1Result evaluate(std::span<const double> p) const;

 private:
  const DirectionSet* dirs_;
  std::vector<double> medians_;
  std::vector<double> mads_;
  std::size_t skipped_ = 0;
};

/// Sorted projections per direction for the empirical CDFs.
class ProjectionCdfDepth {
 public:
  ProjectionCdfDepth(const Dataset& ds, const DirectionSet& dirs);
  /// (1/K) sum_i F_i(<p,u_i>) (1 - F_i(<p,u_i>)), F_i right-continuous.
  double evaluate(std::span<const double> p) const;

 private:
  const DirectionSet* dirs_;
  std::size_t n_;
  std::vector<double> sorted_;
};

Pd1Result pd1(const Dataset& ds, std::span<const double> p, const DirectionSet& dirs);
double pd2(const Dataset& ds, std::span<const double> p, const DirectionSet& dirs);

/// Hemisphere-minimum approximation of angular Tukey depth:
/// min over candidate poles v with <v,p> >= 0 of (1/n) #{i : <v, X_i> >= 0}.
/// Candidates: the given poles (sign-flipped towards p), p itself, and for
/// every sample point the pole orthogonal to it closest to p, which puts that
/// point on the hemisphere boundary. An upper bound of the exact depth that
/// can only decrease as poles are added.
double atd_sphere(const Dataset& ds, std::span<const double> p, const DirectionSet& poles);

}  // namespace geodepth
