#include "geodepth/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "geodepth/error.hpp"

namespace geodepth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double x) {
  double r = x - kTwoPi * std::floor(x / kTwoPi);
  if (r >= kTwoPi || r < 0.0) r = 0.0;
  return r;
}

double circular_distance(double a, double b) {
  const double diff = std::abs(a - b);
  return std::min(diff, kTwoPi - diff);
}

void check_length(const ManifoldSpec& spec, std::size_t got) {
  if (got != spec.coord_count()) {
    throw Error(Errc::ManifoldMismatch, "expected " + std::to_string(spec.coord_count()) +
                                            " coordinates on " + spec.to_string() + ", got " +
                                            std::to_string(got));
  }
}

double euclidean_distance(const ManifoldSpec& spec, std::span<const double> p, std::span<const double> q) {
  const auto w = spec.weights();
  double s = 0.0;
  if (w.empty()) {
    for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
  } else {
    for (std::size_t i = 0; i < p.size(); ++i) s += w[i] * (p[i] - q[i]) * (p[i] - q[i]);
  }
  return std::sqrt(s);
}

// Chord-based arc length, accurate for nearby points where arccos is not.
double sphere_distance(std::span<const double> p, std::span<const double> q) {
  double chord2 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) chord2 += (p[i] - q[i]) * (p[i] - q[i]);
  return 2.0 * std::asin(std::min(1.0, 0.5 * std::sqrt(chord2)));
}

double torus_distance(std::span<const double> p, std::span<const double> q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double c = circular_distance(p[i], q[i]);
    s += c * c;
  }
  return std::sqrt(s);
}

double log_spectrum_norm(const Matrix& c) {
  double s = 0.0;
  for (double lambda : sym_eigenvalues(c)) {
    const double l = std::log(lambda);
    s += l * l;
  }
  return std::sqrt(s);
}

// d(A, B) from a precomputed A^{-1/2}.
double spd_distance_from_inv_sqrt(const Matrix& a_inv_sqrt, const Matrix& b) {
  Matrix c = a_inv_sqrt * b * a_inv_sqrt;
  c.symmetrize();
  return log_spectrum_norm(c);
}

struct SqrtPair {
  Matrix sqrt;
  Matrix inv_sqrt;
};

SqrtPair spd_sqrt_pair(const Matrix& a) {
  const SymmetricEigen eig = sym_eig(a);
  const std::size_t n = a.size();
  SqrtPair out{Matrix(n), Matrix(n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      double si = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double vv = eig.vectors(i, k) * eig.vectors(j, k);
        const double r = std::sqrt(eig.values[k]);
        s += vv * r;
        si += vv / r;
      }
      out.sqrt(i, j) = out.sqrt(j, i) = s;
      out.inv_sqrt(i, j) = out.inv_sqrt(j, i) = si;
    }
  }
  return out;
}

Matrix spd_geodesic_impl(const Matrix& a, const Matrix& b, double s) {
  const SqrtPair r = spd_sqrt_pair(a);
  Matrix inner = r.inv_sqrt * b * r.inv_sqrt;
  inner.symmetrize();
  const Matrix powered = s == 0.5 ? spd_map(MatrixFunction::sqrt(), inner) : spd_map(MatrixFunction::pow(s), inner);
  Matrix out = r.sqrt * powered * r.sqrt;
  out.symmetrize();
  return out;
}

bool spd_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

// ---------------------------------------------------------------------------
// ManifoldSpec

ManifoldSpec::ManifoldSpec(ManifoldKind kind, std::size_t dim, std::vector<double> weights, bool hilbert)
    : kind_(kind), dim_(dim), weights_(std::move(weights)), hilbert_(hilbert) {}

ManifoldSpec ManifoldSpec::euclidean(std::size_t dim) {
  if (dim < 1) throw Error(Errc::InvalidArgument, "euclidean dimension must be >= 1");
  return ManifoldSpec(ManifoldKind::Euclidean, dim);
}

ManifoldSpec ManifoldSpec::euclidean(std::size_t dim, std::vector<double> weights) {
  if (dim < 1) throw Error(Errc::InvalidArgument, "euclidean dimension must be >= 1");
  if (weights.empty()) return euclidean(dim);
  if (weights.size() != dim) throw Error(Errc::WrongDimension, "weight vector length differs from dimension");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(Errc::InvalidArgument, "weights must be strictly positive");
  }
  return ManifoldSpec(ManifoldKind::Euclidean, dim, std::move(weights));
}

ManifoldSpec ManifoldSpec::hilbert(std::size_t grid_points) {
  if (grid_points < 1) throw Error(Errc::InvalidArgument, "hilbert grid must have >= 1 point");
  return ManifoldSpec(ManifoldKind::Euclidean, grid_points,
                      std::vector<double>(grid_points, 1.0 / static_cast<double>(grid_points)), true);
}

ManifoldSpec ManifoldSpec::sphere(std::size_t ambient_dim) {
  if (ambient_dim < 2) throw Error(Errc::InvalidArgument, "sphere ambient dimension must be >= 2");
  return ManifoldSpec(ManifoldKind::Sphere, ambient_dim);
}

ManifoldSpec ManifoldSpec::torus(std::size_t dim) {
  if (dim < 1) throw Error(Errc::InvalidArgument, "torus dimension must be >= 1");
  return ManifoldSpec(ManifoldKind::Torus, dim);
}

ManifoldSpec ManifoldSpec::spd(std::size_t matrix_size) {
  if (matrix_size < 1) throw Error(Errc::InvalidArgument, "SPD matrix size must be >= 1");
  return ManifoldSpec(ManifoldKind::SPDCone, matrix_size);
}

ManifoldSpec ManifoldSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(Errc::InvalidArgument, "manifold must look like 'sphere:3', got '" + std::string(text) + "'");
  }
  const std::string_view name = text.substr(0, colon);
  const std::string_view num = text.substr(colon + 1);
  std::size_t dim = 0;
  const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), dim);
  if (ec != std::errc() || ptr != num.data() + num.size()) {
    throw Error(Errc::InvalidArgument, "bad manifold dimension in '" + std::string(text) + "'");
  }
  if (name == "euclidean") return euclidean(dim);
  if (name == "hilbert") return hilbert(dim);
  if (name == "sphere") return sphere(dim);
  if (name == "torus") return torus(dim);
  if (name == "spd") return spd(dim);
  throw Error(Errc::InvalidArgument, "unknown manifold '" + std::string(name) + "'");
}

std::string ManifoldSpec::to_string() const {
  switch (kind_) {
    case ManifoldKind::Euclidean:
      if (hilbert_) return "hilbert:" + std::to_string(dim_);
      return weighted() ? "euclidean:" + std::to_string(dim_) + ":weighted" : "euclidean:" + std::to_string(dim_);
    case ManifoldKind::Sphere: return "sphere:" + std::to_string(dim_);
    case ManifoldKind::Torus: return "torus:" + std::to_string(dim_);
    case ManifoldKind::SPDCone: return "spd:" + std::to_string(dim_);
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Validation

Point validate(const ManifoldSpec& spec, std::span<const double> raw) {
  if (raw.size() != spec.coord_count()) {
    throw Error(Errc::WrongDimension, "expected " + std::to_string(spec.coord_count()) + " values for " +
                                          spec.to_string() + ", got " + std::to_string(raw.size()));
  }
  for (double v : raw) {
    if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "non-finite coordinate");
  }
  std::vector<double> c(raw.begin(), raw.end());
  switch (spec.kind()) {
    case ManifoldKind::Euclidean: break;
    case ManifoldKind::Sphere: {
      double norm2 = 0.0;
      for (double v : c) norm2 += v * v;
      const double norm = std::sqrt(norm2);
      if (std::abs(norm - 1.0) > 1e-6) {
        throw Error(Errc::NotUnitNorm, "vector norm " + std::to_string(norm) + " is not 1");
      }
      // Already-unit vectors are kept as is so validation is idempotent.
      if (std::abs(norm2 - 1.0) > 1e-15) {
        for (double& v : c) v /= norm;
      }
      break;
    }
    case ManifoldKind::Torus:
      for (double& v : c) v = wrap_angle(v);
      break;
    case ManifoldKind::SPDCone: {
      Matrix a = Matrix::from_row_major(c);
      if (a.max_asymmetry() > 1e-9 * std::max(1.0, a.frobenius_norm())) {
        throw Error(Errc::NotSymmetric, "matrix is not symmetric");
      }
      a.symmetrize();
      if (!is_positive_definite(sym_eigenvalues(a))) {
        throw Error(Errc::NotPositiveDefinite, "matrix is not positive definite");
      }
      c.assign(a.data().begin(), a.data().end());
      break;
    }
  }
  return Point(std::move(c));
}

// ---------------------------------------------------------------------------
// Distance and midpoint

double distance(const ManifoldSpec& spec, std::span<const double> p, std::span<const double> q) {
  check_length(spec, p.size());
  check_length(spec, q.size());
  switch (spec.kind()) {
    case ManifoldKind::Euclidean: return euclidean_distance(spec, p, q);
    case ManifoldKind::Sphere: return sphere_distance(p, q);
    case ManifoldKind::Torus: return torus_distance(p, q);
    case ManifoldKind::SPDCone: {
      // Fixed argument order keeps d(p, q) == d(q, p) bit for bit.
      if (spd_less(q, p)) std::swap(p, q);
      return spd_distance(Matrix::from_row_major(p), Matrix::from_row_major(q));
    }
  }
  return 0.0;
}

double distance(const ManifoldSpec& spec, const Point& p, const Point& q) {
  return distance(spec, p.coords(), q.coords());
}

bool try_midpoint(const ManifoldSpec& spec, std::span<const double> p, std::span<const double> q,
                  std::span<double> out) {
  check_length(spec, p.size());
  check_length(spec, q.size());
  switch (spec.kind()) {
    case ManifoldKind::Euclidean:
      for (std::size_t i = 0; i < p.size(); ++i) out[i] = 0.5 * (p[i] + q[i]);
      return true;
    case ManifoldKind::Sphere: {
      double dot = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) dot += p[i] * q[i];
      if (dot <= -1.0 + kCutLocusEps) return false;
      double norm2 = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] = p[i] + q[i];
        norm2 += out[i] * out[i];
      }
      const double norm = std::sqrt(norm2);
      for (std::size_t i = 0; i < p.size(); ++i) out[i] /= norm;
      return true;
    }
    case ManifoldKind::Torus:
      for (std::size_t i = 0; i < p.size(); ++i) {
        double diff = q[i] - p[i];
        if (std::abs(std::abs(diff) - std::numbers::pi) <= kCutLocusEps) return false;
        if (diff > std::numbers::pi) diff -= kTwoPi;
        if (diff < -std::numbers::pi) diff += kTwoPi;
        out[i] = wrap_angle(p[i] + 0.5 * diff);
      }
      return true;
    case ManifoldKind::SPDCone: {
      const Matrix m = geometric_mean(Matrix::from_row_major(p), Matrix::from_row_major(q));
      std::copy(m.data().begin(), m.data().end(), out.begin());
      return true;
    }
  }
  return false;
}

Point midpoint(const ManifoldSpec& spec, const Point& p, const Point& q) {
  std::vector<double> out(spec.coord_count());
  if (!try_midpoint(spec, p.coords(), q.coords(), out)) {
    throw Error(Errc::CutLocus, "minimizing geodesic is not unique");
  }
  return Point(std::move(out));
}

GeodesicBall diameter_ball(const ManifoldSpec& spec, const Point& x1, const Point& x2) {
  return GeodesicBall{midpoint(spec, x1, x2), 0.5 * distance(spec, x1, x2)};
}

bool contains(const ManifoldSpec& spec, const GeodesicBall& ball, const Point& p) {
  return distance(spec, ball.center, p) <= ball.radius + kBallSlack;
}

// ---------------------------------------------------------------------------
// Containment

std::size_t prepared_ball_stride(const ManifoldSpec& spec) {
  return spec.kind() == ManifoldKind::Euclidean ? 2 * spec.coord_count() : spec.coord_count();
}

bool prepare_ball(const ManifoldSpec& spec, std::span<const double> x1, std::span<const double> x2,
                  std::span<double> center_out, double& radius_out) {
  switch (spec.kind()) {
    case ManifoldKind::Euclidean: {
      // Euclidean containment never needs the midpoint; keep the endpoints.
      check_length(spec, x1.size());
      check_length(spec, x2.size());
      std::copy(x1.begin(), x1.end(), center_out.begin());
      std::copy(x2.begin(), x2.end(), center_out.begin() + static_cast<std::ptrdiff_t>(x1.size()));
      radius_out = 0.0;
      return true;
    }
    case ManifoldKind::Sphere:
    case ManifoldKind::Torus:
      if (!try_midpoint(spec, x1, x2, center_out)) return false;
      radius_out = 0.5 * distance(spec, x1, x2);
      return true;
    case ManifoldKind::SPDCone: {
      check_length(spec, x1.size());
      check_length(spec, x2.size());
      const Matrix m = geometric_mean(Matrix::from_row_major(x1), Matrix::from_row_major(x2));
      const Matrix m_inv_sqrt = spd_map(MatrixFunction::inv_sqrt(), m);
      std::copy(m_inv_sqrt.data().begin(), m_inv_sqrt.data().end(), center_out.begin());
      radius_out = 0.5 * distance(spec, x1, x2);
      return true;
    }
  }
  return false;
}

bool prepared_ball_contains(const ManifoldSpec& spec, std::span<const double> center, double radius,
                            std::span<const double> p) {
  switch (spec.kind()) {
    case ManifoldKind::Euclidean: {
      const std::size_t k = p.size();
      const double* a = center.data();
      const double* b = center.data() + k;
      const auto w = spec.weights();
      double s = 0.0;
      if (w.empty()) {
        for (std::size_t i = 0; i < k; ++i) s += (a[i] - p[i]) * (b[i] - p[i]);
      } else {
        for (std::size_t i = 0; i < k; ++i) s += w[i] * (a[i] - p[i]) * (b[i] - p[i]);
      }
      return s <= 0.0;
    }
    case ManifoldKind::Sphere: return sphere_distance(center, p) <= radius + kBallSlack;
    case ManifoldKind::Torus: return torus_distance(center, p) <= radius + kBallSlack;
    case ManifoldKind::SPDCone:
      return spd_distance_from_inv_sqrt(Matrix::from_row_major(center), Matrix::from_row_major(p)) <=
             radius + kBallSlack;
  }
  return false;
}

bool ball_contains(const ManifoldSpec& spec, std::span<const double> x1, std::span<const double> x2,
                   std::span<const double> p) {
  check_length(spec, p.size());
  std::vector<double> center(prepared_ball_stride(spec));
  double radius = 0.0;
  if (!prepare_ball(spec, x1, x2, center, radius)) {
    throw Error(Errc::CutLocus, "diameter endpoints are a cut-locus pair");
  }
  return prepared_ball_contains(spec, center, radius, p);
}

bool ball_contains(const ManifoldSpec& spec, const Point& x1, const Point& x2, const Point& p) {
  return ball_contains(spec, x1.coords(), x2.coords(), p.coords());
}

// ---------------------------------------------------------------------------
// SPD helpers

Matrix geometric_mean(const Matrix& a, const Matrix& b) { return spd_geodesic_impl(a, b, 0.5); }

Matrix spd_geodesic(const Matrix& a, const Matrix& b, double s) { return spd_geodesic_impl(a, b, s); }

double spd_distance(const Matrix& a, const Matrix& b) {
  return spd_distance_from_inv_sqrt(spd_map(MatrixFunction::inv_sqrt(), a), b);
}

}  // namespace geodepth
