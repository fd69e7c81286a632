#include "geodepth/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geodepth/error.hpp"
#include "geodepth/rng.hpp"
#include "geodepth/stats.hpp"

namespace geodepth {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void require_euclidean(const Dataset& ds, const DirectionSet& dirs) {
  if (ds.spec().kind() != ManifoldKind::Euclidean) {
    throw Error(Errc::ManifoldMismatch, "projection depths need Euclidean data, got " + ds.spec().to_string());
  }
  if (ds.size() < 2) throw Error(Errc::DegenerateSample, "projection depths need at least two sample points");
  if (dirs.dim() != ds.stride()) {
    throw Error(Errc::WrongDimension, "directions have dimension " + std::to_string(dirs.dim()) + ", data " +
                                          std::to_string(ds.stride()));
  }
}

void require_query(std::span<const double> p, std::size_t dim) {
  if (p.size() != dim) throw Error(Errc::WrongDimension, "query has " + std::to_string(p.size()) + " coordinates");
}

std::vector<double> projections(const Dataset& ds, std::span<const double> u) {
  std::vector<double> out(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) out[i] = dot(ds.point(i), u);
  return out;
}

}  // namespace

DirectionSet::DirectionSet(std::size_t dim, std::vector<double> data, std::optional<std::uint64_t> seed)
    : dim_(dim), data_(std::move(data)), seed_(seed) {}

DirectionSet DirectionSet::random(std::size_t dim, std::size_t count, std::uint64_t seed) {
  if (dim == 0 || count == 0) throw Error(Errc::InvalidArgument, "direction set needs dim >= 1 and K >= 1");
  RngStream rng(seed);
  std::vector<double> data(dim * count);
  for (std::size_t d = 0; d < count; ++d) {
    double norm2 = 0.0;
    while (!(norm2 > 0.0)) {
      norm2 = 0.0;
      for (std::size_t l = 0; l < dim; ++l) {
        const double z = rng.normal();
        data[d * dim + l] = z;
        norm2 += z * z;
      }
    }
    const double norm = std::sqrt(norm2);
    for (std::size_t l = 0; l < dim; ++l) data[d * dim + l] /= norm;
  }
  return DirectionSet(dim, std::move(data), seed);
}

DirectionSet DirectionSet::from_vectors(const std::vector<std::vector<double>>& vectors) {
  if (vectors.empty() || vectors.front().empty()) throw Error(Errc::InvalidArgument, "direction set is empty");
  const std::size_t dim = vectors.front().size();
  std::vector<double> data;
  data.reserve(dim * vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != dim) throw Error(Errc::WrongDimension, "directions must share one dimension");
    const double norm = std::sqrt(dot(v, v));
    if (!(norm > 0.0)) throw Error(Errc::InvalidArgument, "zero direction vector");
    for (double x : v) data.push_back(x / norm);
  }
  return DirectionSet(dim, std::move(data), std::nullopt);
}

DirectionSet DirectionSet::with(std::span<const double> extra) const {
  if (extra.size() != dim_) throw Error(Errc::WrongDimension, "extra direction has the wrong dimension");
  const double norm = std::sqrt(dot(extra, extra));
  if (!(norm > 0.0)) throw Error(Errc::InvalidArgument, "zero direction vector");
  std::vector<double> data = data_;
  for (double x : extra) data.push_back(x / norm);
  return DirectionSet(dim_, std::move(data), seed_);
}

ProjectionOutlyingness::ProjectionOutlyingness(const Dataset& ds, const DirectionSet& dirs) : dirs_(&dirs) {
  require_euclidean(ds, dirs);
  medians_.resize(dirs.size());
  mads_.resize(dirs.size());
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    const std::vector<double> proj = projections(ds, dirs.direction(d));
    medians_[d] = stats::median(proj);
    mads_[d] = stats::mad(proj);
    if (!(mads_[d] > 0.0)) ++skipped_;
  }
}

Pd1Result ProjectionOutlyingness::evaluate(std::span<const double> p) const {
  require_query(p, dirs_->dim());
  if (skipped_ == dirs_->size()) throw Error(Errc::ZeroMAD, "every projection direction has zero MAD");
  double ou = 0.0;
  for (std::size_t d = 0; d < dirs_->size(); ++d) {
    if (!(mads_[d] > 0.0)) continue;
    ou = std::max(ou, std::abs(dot(p, dirs_->direction(d)) - medians_[d]) / mads_[d]);
  }
  return Pd1Result{1.0 / (1.0 + ou), ou, skipped_};
}

ProjectionCdfDepth::ProjectionCdfDepth(const Dataset& ds, const DirectionSet& dirs)
    : dirs_(&dirs), n_(ds.size()) {
  require_euclidean(ds, dirs);
  sorted_.reserve(n_ * dirs.size());
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    std::vector<double> proj = projections(ds, dirs.direction(d));
    std::sort(proj.begin(), proj.end());
    sorted_.insert(sorted_.end(), proj.begin(), proj.end());
  }
}

double ProjectionCdfDepth::evaluate(std::span<const double> p) const {
  require_query(p, dirs_->dim());
  double sum = 0.0;
  for (std::size_t d = 0; d < dirs_->size(); ++d) {
    const auto first = sorted_.begin() + static_cast<std::ptrdiff_t>(d * n_);
    const auto last = first + static_cast<std::ptrdiff_t>(n_);
    const double t = dot(p, dirs_->direction(d));
    const double f = static_cast<double>(std::upper_bound(first, last, t) - first) / static_cast<double>(n_);
    sum += f * (1.0 - f);
  }
  return sum / static_cast<double>(dirs_->size());
}

Pd1Result pd1(const Dataset& ds, std::span<const double> p, const DirectionSet& dirs) {
  return ProjectionOutlyingness(ds, dirs).evaluate(p);
}

double pd2(const Dataset& ds, std::span<const double> p, const DirectionSet& dirs) {
  return ProjectionCdfDepth(ds, dirs).evaluate(p);
}

double atd_sphere(const Dataset& ds, std::span<const double> p, const DirectionSet& poles) {
  if (ds.spec().kind() != ManifoldKind::Sphere) {
    throw Error(Errc::ManifoldMismatch, "angular Tukey depth needs sphere data, got " + ds.spec().to_string());
  }
  if (ds.size() == 0) throw Error(Errc::DegenerateSample, "empty sample");
  if (poles.dim() != ds.stride()) throw Error(Errc::WrongDimension, "poles do not match the sphere dimension");
  require_query(p, ds.stride());

  const std::size_t n = ds.size();
  const std::size_t k = ds.stride();
  std::size_t best = n + 1;
  std::vector<double> v(k);
  auto score = [&](std::span<const double> pole) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n && count < best; ++i) count += dot(pole, ds.point(i)) >= 0.0;
    best = std::min(best, count);
  };

  for (std::size_t d = 0; d < poles.size(); ++d) {
    const auto u = poles.direction(d);
    const double sign = dot(u, p) >= 0.0 ? 1.0 : -1.0;
    for (std::size_t l = 0; l < k; ++l) v[l] = sign * u[l];
    score(v);
  }
  score(p);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = ds.point(i);
    const double c = dot(p, x);
    double norm2 = 0.0;
    for (std::size_t l = 0; l < k; ++l) {
      v[l] = p[l] - c * x[l];
      norm2 += v[l] * v[l];
    }
    if (norm2 < 1e-24) continue;
    const double norm = std::sqrt(norm2);
    for (double& e : v) e /= norm;
    score(v);
  }
  if (best > n) throw Error(Errc::NoValidPole, "no candidate pole has p in its hemisphere");
  return static_cast<double>(best) / static_cast<double>(n);
}

}  // namespace geodepth
