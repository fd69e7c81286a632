#pragma once

// Seeded generators for the simulation designs: multivariate Gaussian,
// von Mises-Fisher, multivariate von Mises on the torus, Wishart, point masses
// and finite mixtures of these.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "geodepth/dataset.hpp"
#include "geodepth/geometry.hpp"
#include "geodepth/matrix.hpp"
#include "geodepth/rng.hpp"

namespace geodepth {

class SamplerSpec;

struct GaussianParams {
  std::vector<double> mean;
  Matrix covariance;
};

struct VmfParams {
  std::vector<double> mean_direction;
  double concentration = 0.0;
};

/// Density proportional to exp{kappa^T c(theta) + 1/2 s(theta)^T Delta s(theta)}
/// with c_i = cos(theta_i - mu_i), s_i = sin(theta_i - mu_i).
struct MvmParams {
  std::vector<double> mean;
  std::vector<double> concentration;
  Matrix coupling;
};

/// Sum of `degrees` outer products of N(0, scale) vectors; E = degrees * scale.
struct WishartParams {
  Matrix scale;
  std::size_t degrees = 0;
};

struct PointMassParams {
  std::vector<double> location;
};

struct MixtureParams {
  std::vector<SamplerSpec> components;
  std::vector<double> weights;
};

class SamplerSpec {
 public:
  using Variant = std::variant<GaussianParams, VmfParams, MvmParams, WishartParams, PointMassParams, MixtureParams>;

  static SamplerSpec gaussian(std::vector<double> mean, Matrix covariance);
  static SamplerSpec standard_gaussian(std::size_t dim);
  static SamplerSpec vmf(std::vector<double> mean_direction, double concentration);
  static SamplerSpec mvm(std::vector<double> mean, std::vector<double> concentration, Matrix coupling);
  static SamplerSpec wishart(Matrix scale, std::size_t degrees);
  static SamplerSpec point_mass(std::vector<double> location);
  static SamplerSpec mixture(std::vector<SamplerSpec> components, std::vector<double> weights);

  const Variant& params() const noexcept { return params_; }
  /// Length of one drawn coordinate vector.
  std::size_t coord_count() const;
  /// True for N(0, I).
  bool is_standard_gaussian() const;

 private:
  explicit SamplerSpec(Variant v) : params_(std::move(v)) {}
  Variant params_;
};

/// Manifold the sampler's draws naturally live on (Gaussian -> unweighted
/// Euclidean, vMF -> sphere, MVM -> torus, Wishart -> SPD cone).
ManifoldSpec natural_manifold(const SamplerSpec& spec);

namespace detail {
struct CompiledSampler;
}

/// A SamplerSpec with its factorizations precomputed. Cheap to copy; each copy
/// keeps its own rejection counters, so give every task its own instance.
class Sampler {
 public:
  explicit Sampler(const SamplerSpec& spec);

  std::size_t coord_count() const noexcept;
  /// Writes one canonical draw into `out`; returns the index of the top-level
  /// mixture component used (0 for non-mixtures). Throws Errc::RejectionStall
  /// when the torus rejection sampler accepts fewer than 1e-4 of >= 1e5 proposals.
  std::size_t draw(RngStream& rng, std::span<double> out);

 private:
  std::shared_ptr<const detail::CompiledSampler> model_;
  std::uint64_t proposals_ = 0;
  std::uint64_t accepted_ = 0;
};

struct LabeledSample {
  Dataset data;
  std::vector<std::size_t> labels;
};

/// n iid draws, each validated on `manifold`. Invalid draws raise
/// Errc::SamplerFailure.
Dataset sample(const ManifoldSpec& manifold, const SamplerSpec& spec, RngStream& rng, std::size_t n);
LabeledSample sample_labeled(const ManifoldSpec& manifold, const SamplerSpec& spec, RngStream& rng,
                             std::size_t n);

/// One of the named simulation designs.
struct Preset {
  std::string name;
  ManifoldSpec manifold;
  SamplerSpec sampler;
  /// Centre used for distance columns: the majority component's mean
  /// parameter or expectation.
  Point reference;
  std::string reference_label;
  /// Mixture component holding the bulk of the mass; other labels are outliers.
  std::size_t majority_component = 0;
};

/// Names: torus-mvm, torus-mvm-mixture, sphere-vmf, sphere-vmf-mixture,
/// spd-wishart, spd-wishart-mixture, gauss-k<N> (e.g. gauss-k5, gauss-k20),
/// gauss-contaminated-k10, fda-brownian. Throws Errc::UnknownPreset.
Preset preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace geodepth
