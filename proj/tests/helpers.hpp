#pragma once

#include <cmath>
#include <vector>

#include "geodepth/geometry.hpp"
#include "geodepth/matrix.hpp"
#include "geodepth/rng.hpp"

namespace geodepth::testing {

inline std::vector<double> normals(RngStream& rng, std::size_t k, double scale = 1.0) {
  std::vector<double> v(k);
  for (double& x : v) x = scale * rng.normal();
  return v;
}

inline Matrix random_matrix(RngStream& rng, std::size_t k) {
  Matrix m(k);
  for (double& x : m.data()) x = rng.normal();
  return m;
}

/// Gram-Schmidt on a Gaussian matrix.
inline Matrix random_orthogonal(RngStream& rng, std::size_t k) {
  Matrix q = random_matrix(rng, k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t p = 0; p < j; ++p) {
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i) s += q(i, j) * q(i, p);
      for (std::size_t i = 0; i < k; ++i) q(i, j) -= s * q(i, p);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < k; ++i) norm += q(i, j) * q(i, j);
    for (std::size_t i = 0; i < k; ++i) q(i, j) /= std::sqrt(norm);
  }
  return q;
}

inline std::vector<double> apply(const Matrix& q, std::span<const double> x) {
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += q(i, j) * x[j];
  return y;
}

/// G A G^T + k I style SPD matrix with moderate condition number.
inline Matrix random_spd(RngStream& rng, std::size_t k) {
  const Matrix g = random_matrix(rng, k);
  Matrix a = g * g.transpose() + static_cast<double>(k) * 0.5 * Matrix::identity(k);
  a.symmetrize();
  return a;
}

inline Point random_point(const ManifoldSpec& spec, RngStream& rng) {
  switch (spec.kind()) {
    case ManifoldKind::Euclidean:
      return validate(spec, normals(rng, spec.dim()));
    case ManifoldKind::Sphere: {
      std::vector<double> v = normals(rng, spec.dim());
      double n = 0.0;
      for (double x : v) n += x * x;
      for (double& x : v) x /= std::sqrt(n);
      return validate(spec, v);
    }
    case ManifoldKind::Torus: {
      std::vector<double> v(spec.dim());
      for (double& x : v) x = 2.0 * M_PI * rng.uniform();
      return validate(spec, v);
    }
    case ManifoldKind::SPDCone: {
      const Matrix a = random_spd(rng, spec.dim());
      return validate(spec, a.data());
    }
  }
  return {};
}

inline std::vector<ManifoldSpec> all_manifolds() {
  return {ManifoldSpec::euclidean(3), ManifoldSpec::hilbert(8), ManifoldSpec::sphere(3), ManifoldSpec::torus(2),
          ManifoldSpec::spd(3)};
}

}  // namespace geodepth::testing
