#pragma once

// Empirical spherical depth (DCOPS): the order-2 U-statistic counting the
// closed diameter balls B_{X_i X_j}, i < j, that contain a query point, plus a
// Monte-Carlo estimator of the population depth P(p in B_{X1 X2}), the
// deepest sample point and depth profiles along geodesic rays.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "geodepth/dataset.hpp"
#include "geodepth/geometry.hpp"
#include "geodepth/samplers.hpp"

namespace geodepth {

enum class DepthMethod { DCOPS, PD1, PD2, ATD };

const char* to_string(DepthMethod method) noexcept;
DepthMethod parse_depth_method(std::string_view text);

struct DepthValue {
  double value = 0.0;
  std::size_t skipped_pairs = 0;
};

struct DepthReport {
  DepthMethod method = DepthMethod::DCOPS;
  std::vector<double> values;
  std::size_t n = 0;
  /// Cut-locus pairs left out of the denominator (identical for every query,
  /// since it only depends on the pair).
  std::size_t skipped_pairs = 0;
  std::optional<std::uint64_t> seed;
};

struct BatchOptions {
  /// 0 selects default_thread_count().
  unsigned threads = 0;
  /// Precompute the prepared diameter balls of all pairs only up to this
  /// sample size; larger samples recompute them per query.
  std::size_t cache_max_n = 5000;
};

/// Fraction of the C(n,2) - skipped pairs whose closed diameter ball holds p.
/// Pairs on the cut locus are skipped. Throws Errc::DegenerateSample when
/// n < 2 or every pair is skipped.
DepthValue empirical_depth(const Dataset& ds, std::span<const double> p);
DepthValue empirical_depth(const Dataset& ds, const Point& p);

/// Same values as one empirical_depth call per query, evaluated in parallel
/// over queries. Euclidean data use a query-centred inner-product sweep; other
/// manifolds reuse a pair cache of prepared balls.
DepthReport empirical_depth_batch(const Dataset& ds, const Dataset& queries, const BatchOptions& opts = {});
DepthReport empirical_depth_batch(const Dataset& ds, const std::vector<Point>& queries,
                                  const BatchOptions& opts = {});
/// Depth of every sample point with respect to the sample itself.
DepthReport empirical_depth_self(const Dataset& ds, const BatchOptions& opts = {});

/// Depth estimated from `pairs` index pairs drawn uniformly (with replacement)
/// among the C(n,2) sample pairs; the same pairs serve every query. Intended
/// for samples where the full O(n^2) sweep per query is too expensive.
DepthReport subsampled_depth_batch(const Dataset& ds, const Dataset& queries, std::size_t pairs,
                                   std::uint64_t seed, const BatchOptions& opts = {});

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Population depth P(p in B_{X1 X2}) from `pairs` iid pairs (N >= 100). Cut
/// locus pairs are redrawn. Pairs are generated in fixed blocks from
/// substreams of `seed`, so the estimate does not depend on the thread count.
McEstimate population_depth_mc(const ManifoldSpec& spec, const SamplerSpec& sampler, const Point& p,
                               std::size_t pairs, std::uint64_t seed, unsigned threads = 0);
/// Several query points scored against one common set of pairs.
std::vector<McEstimate> population_depth_mc_batch(const ManifoldSpec& spec, const SamplerSpec& sampler,
                                                  const std::vector<Point>& queries, std::size_t pairs,
                                                  std::uint64_t seed, unsigned threads = 0);

struct DeepestPoint {
  std::size_t index = 0;
  double value = 0.0;
};

/// Sample point of maximal empirical depth; ties go to the lowest index.
DeepestPoint deepest_point(const Dataset& ds, const BatchOptions& opts = {});
/// Same search with subsampled_depth_batch scores.
DeepestPoint deepest_point_subsampled(const Dataset& ds, std::size_t pairs, std::uint64_t seed,
                                      const BatchOptions& opts = {});

/// Geodesic ray from `base`: Euclidean/torus base + t u, sphere great circle
/// through base with initial tangent u, SPD B^{1/2} exp(t S) B^{1/2}. The
/// direction is normalized so that the parameter equals the geodesic distance
/// from the base (for the torus, until the ray wraps).
class RaySpec {
 public:
  RaySpec(ManifoldSpec spec, Point base, std::vector<double> direction, std::vector<double> grid);

  const ManifoldSpec& spec() const noexcept { return spec_; }
  const Point& base() const noexcept { return base_; }
  std::span<const double> grid() const noexcept { return grid_; }
  Point at(double t) const;

 private:
  ManifoldSpec spec_;
  Point base_;
  std::vector<double> direction_;
  std::vector<double> grid_;
};

struct ProfileRow {
  double lambda = 0.0;
  double distance = 0.0;
  double depth = 0.0;
};

struct DepthProfile {
  DepthMethod method = DepthMethod::DCOPS;
  std::vector<ProfileRow> rows;
  /// Grid steps where depth increased; descriptive only.
  std::size_t monotonicity_violations = 0;
};

struct ProfileOptions {
  BatchOptions batch;
  /// Random directions (PD1, PD2) or poles (ATD).
  std::size_t directions = 500;
  std::uint64_t seed = 0;
};

DepthProfile depth_profile(const Dataset& ds, const RaySpec& ray, DepthMethod method,
                           const ProfileOptions& opts = {});
/// Population DCOPS along the ray by Monte Carlo with `pairs` pairs per point.
DepthProfile depth_profile(const SamplerSpec& sampler, const RaySpec& ray, std::size_t pairs, std::uint64_t seed,
                           unsigned threads = 0);

}  // namespace geodepth
