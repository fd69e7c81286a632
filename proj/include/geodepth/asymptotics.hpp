#pragma once

// Simulation checks of the large-sample theory: the Gaussian closed form of
// g_x, the marginal variance 4 P2 (1 - P2), the U-statistic projection
// variance zeta1, CLT replications and uniform-consistency (sup-error) runs.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "geodepth/depth.hpp"
#include "geodepth/geometry.hpp"
#include "geodepth/samplers.hpp"

namespace geodepth {

/// P(x in B_{y Z}) for Z ~ N(0, I_k): the upper normal tail at
/// <x - y, x> / ||x - y||. Throws Errc::CoincidentPoints when x == y.
double gx_gaussian(std::span<const double> x, std::span<const double> y);

/// Rao-Blackwellized P2(D_x) = E g_x(Y), Y ~ N(0, I_k), from N >= 1e4 draws.
McEstimate p2_gaussian(std::span<const double> x, std::size_t draws, std::uint64_t seed, unsigned threads = 0);

struct Sigma2Estimate {
  double value = 0.0;
  /// Delta-method error 4 |1 - 2 P2| se(P2).
  double std_error = 0.0;
  double p2 = 0.0;
  double p2_std_error = 0.0;
};

/// 4 P2 (1 - P2). Standard Gaussian samplers on unweighted Euclidean space
/// use p2_gaussian; everything else population_depth_mc.
Sigma2Estimate sigma2_marginal(const ManifoldSpec& spec, const SamplerSpec& sampler, const Point& x,
                               std::size_t draws, std::uint64_t seed, unsigned threads = 0);

/// Var(g(Y)) with g(y) = P(x in B_{yZ}) estimated by N_inner fresh draws per
/// outer draw y. The binomial noise of each inner estimate is removed
/// (mean ghat (1 - ghat) / (N_inner - 1)); the result is clamped at 0.
McEstimate zeta1(const ManifoldSpec& spec, const SamplerSpec& sampler, const Point& x, std::size_t outer,
                 std::size_t inner, std::uint64_t seed, unsigned threads = 0);
/// Var(g_x(Y)) with the exact Gaussian g_x, Y ~ N(0, I_k).
McEstimate zeta1_gaussian(std::span<const double> x, std::size_t outer, std::uint64_t seed, unsigned threads = 0);

struct CltOptions {
  std::size_t reference_pairs = 1'000'000;
  std::size_t zeta_outer = 100'000;
  /// Inner draws for the generic zeta1 estimator (non-Gaussian samplers).
  std::size_t zeta_inner = 2'000;
  unsigned threads = 0;
};

struct CLTReport {
  Point x;
  std::size_t n = 0;
  std::size_t reps = 0;
  double reference = 0.0;
  double reference_std_error = 0.0;
  /// sqrt(n) (BDhat_n(x) - BD(x)) per replication.
  std::vector<double> scaled_deviations;
  double mean = 0.0;
  double mean_std_error = 0.0;
  double variance = 0.0;
  /// 4 P2 (1 - P2) with P2 = reference.
  double sigma2_marginal = 0.0;
  double sigma2_proj = 0.0;
  double sigma2_proj_std_error = 0.0;
  double ks_distance = 0.0;
};

/// R >= 100 replications of BDhat_n(x) on fresh samples drawn from
/// substreams of `seed`.
CLTReport clt_experiment(const ManifoldSpec& spec, const SamplerSpec& sampler, const Point& x, std::size_t n,
                         std::size_t reps, std::uint64_t seed, const CltOptions& opts = {});

struct GcOptions {
  std::size_t reference_pairs = 1'000'000;
  unsigned threads = 0;
};

struct ConsistencyReport {
  std::vector<Point> grid;
  std::vector<double> reference;
  std::vector<std::size_t> n_values;
  std::vector<double> sup_errors;
};

/// Sup over the grid of |BDhat_n - BD_ref| for each n. One sample of size
/// max(n) is drawn and the n-sequence uses its prefixes.
ConsistencyReport gc_experiment(const ManifoldSpec& spec, const SamplerSpec& sampler, const std::vector<Point>& grid,
                                const std::vector<std::size_t>& n_values, std::uint64_t seed,
                                const GcOptions& opts = {});

/// Evaluation grid for a preset: a spiral in the 2-sigma disk of the first two
/// coordinates for standard Gaussians, a spiral cap of angular radius 0.8
/// around the mean direction for vMF, and sampler draws otherwise.
std::vector<Point> default_grid(const Preset& preset, std::size_t count, std::uint64_t seed);

struct VarianceCurveRow {
  std::size_t k = 0;
  double l = 0.0;
  Sigma2Estimate sigma2;
};

/// sigma2_marginal at x = l e_1 under N(0, I_k) for every (k, l).
std::vector<VarianceCurveRow> variance_curve(const std::vector<std::size_t>& ks, const std::vector<double>& ls,
                                             std::size_t draws, std::uint64_t seed, unsigned threads = 0);

/// P2(D_x ∩ D_y) - P2(D_x) P2(D_y) from common pairs (diagnostic only).
McEstimate bridge_covariance(const ManifoldSpec& spec, const SamplerSpec& sampler, const Point& x, const Point& y,
                             std::size_t pairs, std::uint64_t seed);

}  // namespace geodepth
