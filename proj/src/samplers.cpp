#include "geodepth/samplers.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "geodepth/error.hpp"

namespace geodepth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kStallWindow = 100000;
constexpr double kStallRate = 1e-4;
constexpr std::uint64_t kMaxProposalsPerDraw = 10 * kStallWindow;

double wrap(double x) {
  double r = x - kTwoPi * std::floor(x / kTwoPi);
  if (r >= kTwoPi || r < 0.0) r = 0.0;
  return r;
}

// Best-Fisher wrapped-Cauchy envelope rejection for von Mises(mu, kappa).
double von_mises(RngStream& rng, double mu, double kappa) {
  if (kappa < 1e-8) return wrap(kTwoPi * rng.uniform());
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double r = (1.0 + rho * rho) / (2.0 * rho);
  double f = 0.0;
  for (;;) {
    const double z = std::cos(std::numbers::pi * rng.uniform());
    f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    const double u2 = rng.uniform_open();
    if (c * (2.0 - c) - u2 > 0.0) break;
    if (std::log(c / u2) + 1.0 - c >= 0.0) break;
  }
  const double angle = std::acos(std::clamp(f, -1.0, 1.0));
  return wrap(rng.uniform() > 0.5 ? mu + angle : mu - angle);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::InvalidArgument, what);
}

Matrix square_root_factor(const Matrix& cov) {
  if (auto l = cholesky(cov)) return *l;
  // Eigen fallback for numerically semi-definite covariances.
  const SymmetricEigen eig = sym_eig(cov);
  const std::size_t n = cov.size();
  Matrix f(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f(i, j) = eig.vectors(i, j) * std::sqrt(std::max(0.0, eig.values[j]));
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------
// SamplerSpec

SamplerSpec SamplerSpec::gaussian(std::vector<double> mean, Matrix covariance) {
  require(!mean.empty(), "gaussian mean must be non-empty");
  require(covariance.size() == mean.size(), "gaussian covariance size differs from mean length");
  require(covariance.max_asymmetry() <= 1e-9 * std::max(1.0, covariance.frobenius_norm()),
          "gaussian covariance must be symmetric");
  return SamplerSpec(GaussianParams{std::move(mean), std::move(covariance)});
}

SamplerSpec SamplerSpec::standard_gaussian(std::size_t dim) {
  return gaussian(std::vector<double>(dim, 0.0), Matrix::identity(dim));
}

SamplerSpec SamplerSpec::vmf(std::vector<double> mean_direction, double concentration) {
  require(mean_direction.size() >= 2, "vMF needs ambient dimension >= 2");
  require(concentration >= 0.0, "vMF concentration must be >= 0");
  double norm2 = 0.0;
  for (double v : mean_direction) norm2 += v * v;
  require(std::abs(std::sqrt(norm2) - 1.0) <= 1e-6, "vMF mean direction must be a unit vector");
  for (double& v : mean_direction) v /= std::sqrt(norm2);
  return SamplerSpec(VmfParams{std::move(mean_direction), concentration});
}

SamplerSpec SamplerSpec::mvm(std::vector<double> mean, std::vector<double> concentration, Matrix coupling) {
  const std::size_t d = mean.size();
  require(d >= 1, "MVM needs at least one angle");
  require(concentration.size() == d && coupling.size() == d, "MVM parameter sizes disagree");
  for (double k : concentration) require(k >= 0.0, "MVM concentrations must be >= 0");
  for (std::size_t i = 0; i < d; ++i) require(coupling(i, i) == 0.0, "MVM coupling diagonal must be zero");
  require(coupling.max_asymmetry() == 0.0, "MVM coupling must be symmetric");
  for (double& m : mean) m = wrap(m);
  return SamplerSpec(MvmParams{std::move(mean), std::move(concentration), std::move(coupling)});
}

SamplerSpec SamplerSpec::wishart(Matrix scale, std::size_t degrees) {
  require(scale.size() >= 1, "Wishart scale must be non-empty");
  require(degrees >= scale.size(), "Wishart degrees of freedom must be >= matrix size");
  require(cholesky(scale).has_value(), "Wishart scale must be positive definite");
  return SamplerSpec(WishartParams{std::move(scale), degrees});
}

SamplerSpec SamplerSpec::point_mass(std::vector<double> location) {
  require(!location.empty(), "point mass location must be non-empty");
  return SamplerSpec(PointMassParams{std::move(location)});
}

SamplerSpec SamplerSpec::mixture(std::vector<SamplerSpec> components, std::vector<double> weights) {
  require(!components.empty(), "mixture needs at least one component");
  require(components.size() == weights.size(), "mixture weights and components differ in count");
  double total = 0.0;
  for (double w : weights) {
    require(w >= 0.0, "mixture weights must be >= 0");
    total += w;
  }
  require(std::abs(total - 1.0) <= 1e-12, "mixture weights must sum to 1");
  const std::size_t len = components.front().coord_count();
  for (const auto& c : components) require(c.coord_count() == len, "mixture components differ in dimension");
  return SamplerSpec(MixtureParams{std::move(components), std::move(weights)});
}

std::size_t SamplerSpec::coord_count() const {
  return std::visit(
      [](const auto& p) -> std::size_t {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GaussianParams>) return p.mean.size();
        else if constexpr (std::is_same_v<T, VmfParams>) return p.mean_direction.size();
        else if constexpr (std::is_same_v<T, MvmParams>) return p.mean.size();
        else if constexpr (std::is_same_v<T, WishartParams>) return p.scale.size() * p.scale.size();
        else if constexpr (std::is_same_v<T, PointMassParams>) return p.location.size();
        else return p.components.front().coord_count();
      },
      params_);
}

bool SamplerSpec::is_standard_gaussian() const {
  const auto* g = std::get_if<GaussianParams>(&params_);
  if (g == nullptr) return false;
  for (double m : g->mean)
    if (m != 0.0) return false;
  return g->covariance == Matrix::identity(g->mean.size());
}

ManifoldSpec natural_manifold(const SamplerSpec& spec) {
  return std::visit(
      [&](const auto& p) -> ManifoldSpec {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GaussianParams>) return ManifoldSpec::euclidean(p.mean.size());
        else if constexpr (std::is_same_v<T, VmfParams>) return ManifoldSpec::sphere(p.mean_direction.size());
        else if constexpr (std::is_same_v<T, MvmParams>) return ManifoldSpec::torus(p.mean.size());
        else if constexpr (std::is_same_v<T, WishartParams>) return ManifoldSpec::spd(p.scale.size());
        else if constexpr (std::is_same_v<T, PointMassParams>) return ManifoldSpec::euclidean(p.location.size());
        else return natural_manifold(p.components.front());
      },
      spec.params());
}

// ---------------------------------------------------------------------------
// Compiled samplers

namespace detail {

struct GaussianModel {
  std::vector<double> mean;
  Matrix factor;
};

struct VmfModel {
  std::vector<double> mu;
  double kappa;
  double b;
  double x0;
  double c;
};

struct MvmModel {
  std::vector<double> mu;
  std::vector<double> kappa;
  Matrix coupling;
  double envelope;
};

struct WishartModel {
  Matrix factor;
  std::size_t degrees;
};

struct MixtureModel {
  std::vector<std::shared_ptr<const CompiledSampler>> components;
  std::vector<double> cumulative;
};

struct CompiledSampler {
  std::variant<GaussianModel, VmfModel, MvmModel, WishartModel, PointMassParams, MixtureModel> model;
  std::size_t coord_count;
};

namespace {

std::shared_ptr<const CompiledSampler> compile(const SamplerSpec& spec) {
  auto out = std::make_shared<CompiledSampler>();
  out->coord_count = spec.coord_count();
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GaussianParams>) {
          out->model = GaussianModel{p.mean, square_root_factor(p.covariance)};
        } else if constexpr (std::is_same_v<T, VmfParams>) {
          const double dm1 = static_cast<double>(p.mean_direction.size() - 1);
          const double kappa = p.concentration;
          const double b = dm1 / (2.0 * kappa + std::sqrt(4.0 * kappa * kappa + dm1 * dm1));
          const double x0 = (1.0 - b) / (1.0 + b);
          const double c = kappa * x0 + dm1 * std::log(1.0 - x0 * x0);
          out->model = VmfModel{p.mean_direction, kappa, b, x0, c};
        } else if constexpr (std::is_same_v<T, MvmParams>) {
          double env = 0.0;
          for (std::size_t i = 0; i < p.coupling.size(); ++i)
            for (std::size_t j = 0; j < p.coupling.size(); ++j)
              if (i != j) env += std::abs(p.coupling(i, j));
          out->model = MvmModel{p.mean, p.concentration, p.coupling, 0.5 * env};
        } else if constexpr (std::is_same_v<T, WishartParams>) {
          out->model = WishartModel{square_root_factor(p.scale), p.degrees};
        } else if constexpr (std::is_same_v<T, PointMassParams>) {
          out->model = p;
        } else {
          MixtureModel m;
          double acc = 0.0;
          for (std::size_t i = 0; i < p.components.size(); ++i) {
            m.components.push_back(compile(p.components[i]));
            acc += p.weights[i];
            m.cumulative.push_back(acc);
          }
          out->model = std::move(m);
        }
      },
      spec.params());
  return out;
}

struct Counters {
  std::uint64_t& proposals;
  std::uint64_t& accepted;
};

void draw_vmf(const VmfModel& m, RngStream& rng, std::span<double> out) {
  const std::size_t p = m.mu.size();
  if (m.kappa < 1e-12) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (std::size_t i = 0; i < p; ++i) {
        out[i] = rng.normal();
        norm2 += out[i] * out[i];
      }
    } while (norm2 == 0.0);
    for (std::size_t i = 0; i < p; ++i) out[i] /= std::sqrt(norm2);
    return;
  }
  // Wood (1994): sample the component along mu, then a uniform tangent direction.
  const double dm1 = static_cast<double>(p - 1);
  double w = 0.0;
  for (;;) {
    const double z = rng.beta(0.5 * dm1, 0.5 * dm1);
    w = (1.0 - (1.0 + m.b) * z) / (1.0 - (1.0 - m.b) * z);
    const double u = rng.uniform_open();
    if (m.kappa * w + dm1 * std::log(1.0 - m.x0 * w) - m.c >= std::log(u)) break;
  }
  std::vector<double> v(p);
  double vnorm2 = 0.0;
  do {
    double along = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      v[i] = rng.normal();
      along += v[i] * m.mu[i];
    }
    vnorm2 = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      v[i] -= along * m.mu[i];
      vnorm2 += v[i] * v[i];
    }
  } while (vnorm2 < 1e-300);
  const double tangent = std::sqrt(std::max(0.0, 1.0 - w * w)) / std::sqrt(vnorm2);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    out[i] = w * m.mu[i] + tangent * v[i];
    norm2 += out[i] * out[i];
  }
  for (std::size_t i = 0; i < p; ++i) out[i] /= std::sqrt(norm2);
}

void draw_mvm(const MvmModel& m, RngStream& rng, std::span<double> out, Counters counters) {
  const std::size_t d = m.mu.size();
  std::vector<double> s(d);
  for (std::uint64_t attempt = 0;; ++attempt) {
    if (attempt >= kMaxProposalsPerDraw) {
      throw Error(Errc::RejectionStall, "no MVM proposal accepted in " + std::to_string(attempt) + " tries");
    }
    for (std::size_t i = 0; i < d; ++i) {
      out[i] = von_mises(rng, m.mu[i], m.kappa[i]);
      s[i] = std::sin(out[i] - m.mu[i]);
    }
    double quad = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) quad += s[i] * m.coupling(i, j) * s[j];
    ++counters.proposals;
    const bool accept = m.envelope == 0.0 || std::log(rng.uniform_open()) < 0.5 * quad - m.envelope;
    if (accept) {
      ++counters.accepted;
      break;
    }
    if (counters.proposals >= kStallWindow &&
        static_cast<double>(counters.accepted) < kStallRate * static_cast<double>(counters.proposals)) {
      throw Error(Errc::RejectionStall, "MVM acceptance rate below 1e-4");
    }
  }
}

void draw_wishart(const WishartModel& m, RngStream& rng, std::span<double> out) {
  const std::size_t k = m.factor.size();
  std::fill(out.begin(), out.end(), 0.0);
  std::vector<double> z(k);
  std::vector<double> x(k);
  for (std::size_t t = 0; t < m.degrees; ++t) {
    for (std::size_t i = 0; i < k; ++i) z[i] = rng.normal();
    for (std::size_t i = 0; i < k; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < k; ++j) s += m.factor(i, j) * z[j];
      x[i] = s;
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i; j < k; ++j) out[i * k + j] += x[i] * x[j];
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j) out[i * k + j] = out[j * k + i];
}

std::size_t draw_compiled(const CompiledSampler& cs, RngStream& rng, std::span<double> out, Counters counters) {
  return std::visit(
      [&](const auto& m) -> std::size_t {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, GaussianModel>) {
          const std::size_t k = m.mean.size();
          std::vector<double> z(k);
          for (std::size_t i = 0; i < k; ++i) z[i] = rng.normal();
          for (std::size_t i = 0; i < k; ++i) {
            double s = m.mean[i];
            for (std::size_t j = 0; j < k; ++j) s += m.factor(i, j) * z[j];
            out[i] = s;
          }
          return 0;
        } else if constexpr (std::is_same_v<T, VmfModel>) {
          draw_vmf(m, rng, out);
          return 0;
        } else if constexpr (std::is_same_v<T, MvmModel>) {
          draw_mvm(m, rng, out, counters);
          return 0;
        } else if constexpr (std::is_same_v<T, WishartModel>) {
          draw_wishart(m, rng, out);
          return 0;
        } else if constexpr (std::is_same_v<T, PointMassParams>) {
          std::copy(m.location.begin(), m.location.end(), out.begin());
          return 0;
        } else {
          const double u = rng.uniform();
          std::size_t c = 0;
          while (c + 1 < m.cumulative.size() && u >= m.cumulative[c]) ++c;
          draw_compiled(*m.components[c], rng, out, counters);
          return c;
        }
      },
      cs.model);
}

}  // namespace
}  // namespace detail

Sampler::Sampler(const SamplerSpec& spec) : model_(detail::compile(spec)) {}

std::size_t Sampler::coord_count() const noexcept { return model_->coord_count; }

std::size_t Sampler::draw(RngStream& rng, std::span<double> out) {
  return detail::draw_compiled(*model_, rng, out, detail::Counters{proposals_, accepted_});
}

LabeledSample sample_labeled(const ManifoldSpec& manifold, const SamplerSpec& spec, RngStream& rng,
                             std::size_t n) {
  if (spec.coord_count() != manifold.coord_count()) {
    throw Error(Errc::ManifoldMismatch, "sampler draws " + std::to_string(spec.coord_count()) +
                                            " coordinates but " + manifold.to_string() + " needs " +
                                            std::to_string(manifold.coord_count()));
  }
  Sampler sampler(spec);
  std::vector<double> rows(n * manifold.coord_count());
  std::vector<std::size_t> labels(n);
  const std::size_t stride = manifold.coord_count();
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = sampler.draw(rng, std::span<double>(rows).subspan(i * stride, stride));
  }
  try {
    return LabeledSample{Dataset(manifold, rows), std::move(labels)};
  } catch (const Error& e) {
    throw Error(Errc::SamplerFailure, std::string("draw failed validation: ") + e.what());
  }
}

Dataset sample(const ManifoldSpec& manifold, const SamplerSpec& spec, RngStream& rng, std::size_t n) {
  return sample_labeled(manifold, spec, rng, n).data;
}

// ---------------------------------------------------------------------------
// Presets

namespace {

SamplerSpec mvm1() {
  return SamplerSpec::mvm({std::numbers::pi / 2.0, 0.0}, {20.0, 20.0},
                          Matrix::from_row_major(std::vector<double>{0.0, 1.0, 1.0, 0.0}));
}

SamplerSpec mvm2() {
  return SamplerSpec::mvm({7.0 * std::numbers::pi / 4.0, 0.0}, {100.0, 100.0},
                          Matrix::from_row_major(std::vector<double>{0.0, 1.0, 1.0, 0.0}));
}

std::vector<double> scaled_identity_coords(std::size_t k, double c) {
  std::vector<double> v(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) v[i * k + i] = c;
  return v;
}

constexpr std::size_t kFdaGrid = 50;

}  // namespace

Preset preset(std::string_view name) {
  if (name == "torus-mvm") {
    return Preset{std::string(name), ManifoldSpec::torus(2), mvm1(), Point({std::numbers::pi / 2.0, 0.0}), "mu1", 0};
  }
  if (name == "torus-mvm-mixture") {
    return Preset{std::string(name), ManifoldSpec::torus(2), SamplerSpec::mixture({mvm1(), mvm2()}, {0.9, 0.1}),
                  Point({std::numbers::pi / 2.0, 0.0}), "mu1", 0};
  }
  if (name == "sphere-vmf") {
    return Preset{std::string(name), ManifoldSpec::sphere(3), SamplerSpec::vmf({1.0, 0.0, 0.0}, 15.0),
                  Point({1.0, 0.0, 0.0}), "mu", 0};
  }
  if (name == "sphere-vmf-mixture") {
    return Preset{std::string(name), ManifoldSpec::sphere(3),
                  SamplerSpec::mixture({SamplerSpec::vmf({1.0, 0.0, 0.0}, 10.0), SamplerSpec::vmf({0.0, 0.0, 1.0}, 50.0)},
                                       {0.9, 0.1}),
                  Point({1.0, 0.0, 0.0}), "mu", 0};
  }
  if (name == "spd-wishart") {
    return Preset{std::string(name), ManifoldSpec::spd(3), SamplerSpec::wishart(Matrix::identity(3), 20),
                  Point(scaled_identity_coords(3, 20.0)), "20I", 0};
  }
  if (name == "spd-wishart-mixture") {
    return Preset{std::string(name), ManifoldSpec::spd(3),
                  SamplerSpec::mixture({SamplerSpec::wishart(Matrix::identity(3), 20),
                                        SamplerSpec::wishart(0.1 * Matrix::identity(3), 50)},
                                       {0.9, 0.1}),
                  Point(scaled_identity_coords(3, 20.0)), "20I", 0};
  }
  if (name == "gauss-contaminated-k10") {
    constexpr std::size_t k = 10;
    return Preset{std::string(name), ManifoldSpec::euclidean(k),
                  SamplerSpec::mixture({SamplerSpec::standard_gaussian(k),
                                        SamplerSpec::gaussian(std::vector<double>(k, 2.0), Matrix::identity(k))},
                                       {0.9, 0.1}),
                  Point(std::vector<double>(k, 0.0)), "origin", 0};
  }
  if (name == "fda-brownian") {
    // Brownian motion observed on the midpoint grid t_i = (i + 1/2) / 50.
    Matrix cov(kFdaGrid);
    for (std::size_t i = 0; i < kFdaGrid; ++i)
      for (std::size_t j = 0; j < kFdaGrid; ++j)
        cov(i, j) = (static_cast<double>(std::min(i, j)) + 0.5) / static_cast<double>(kFdaGrid);
    return Preset{std::string(name), ManifoldSpec::hilbert(kFdaGrid),
                  SamplerSpec::gaussian(std::vector<double>(kFdaGrid, 0.0), std::move(cov)),
                  Point(std::vector<double>(kFdaGrid, 0.0)), "zero", 0};
  }
  if (name.starts_with("gauss-k")) {
    const std::string_view digits = name.substr(7);
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && k >= 1) {
      return Preset{std::string(name), ManifoldSpec::euclidean(k), SamplerSpec::standard_gaussian(k),
                    Point(std::vector<double>(k, 0.0)), "origin", 0};
    }
  }
  throw Error(Errc::UnknownPreset, "unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  return {"torus-mvm",   "torus-mvm-mixture",      "sphere-vmf",  "sphere-vmf-mixture", "spd-wishart",
          "spd-wishart-mixture", "gauss-k2", "gauss-k5", "gauss-k20", "gauss-contaminated-k10", "fda-brownian"};
}

}  // namespace geodepth
