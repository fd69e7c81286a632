#pragma once

// Manifold abstraction: validation, geodesic distance, geodesic midpoint and
// closed diameter-ball containment for Euclidean/Hilbert space, the unit
// sphere, the flat torus and the SPD cone with its affine-invariant metric.
//
// All functions are pure; coordinates are passed as spans so the depth kernels
// can work directly on contiguous dataset storage.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geodepth/matrix.hpp"

namespace geodepth {

enum class ManifoldKind { Euclidean, Sphere, Torus, SPDCone };

class ManifoldSpec {
 public:
  static ManifoldSpec euclidean(std::size_t dim);
  /// Weighted inner product <x,y>_w = sum w_i x_i y_i; all weights must be > 0.
  static ManifoldSpec euclidean(std::size_t dim, std::vector<double> weights);
  /// Discretized L2[0,1]: `grid_points` midpoint-rule nodes, weights 1/grid_points.
  static ManifoldSpec hilbert(std::size_t grid_points);
  static ManifoldSpec sphere(std::size_t ambient_dim);
  static ManifoldSpec torus(std::size_t dim);
  static ManifoldSpec spd(std::size_t matrix_size);

  /// Accepts "euclidean:K", "hilbert:K", "sphere:K", "torus:D", "spd:K".
  static ManifoldSpec parse(std::string_view text);

  ManifoldKind kind() const noexcept { return kind_; }
  /// k for Euclidean/Sphere, d for Torus, matrix size for SPD.
  std::size_t dim() const noexcept { return dim_; }
  /// Length of a coordinate vector (k*k for SPD).
  std::size_t coord_count() const noexcept { return kind_ == ManifoldKind::SPDCone ? dim_ * dim_ : dim_; }
  std::span<const double> weights() const noexcept { return weights_; }
  bool weighted() const noexcept { return !weights_.empty(); }
  std::string to_string() const;

  friend bool operator==(const ManifoldSpec&, const ManifoldSpec&) = default;

 private:
  ManifoldSpec(ManifoldKind kind, std::size_t dim, std::vector<double> weights = {}, bool hilbert = false);

  ManifoldKind kind_;
  std::size_t dim_;
  std::vector<double> weights_;
  bool hilbert_ = false;
};

/// Coordinates whose meaning is fixed by a ManifoldSpec. Construct through
/// validate() unless the coordinates are already known to be canonical.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}

  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& vector() const noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

struct GeodesicBall {
  Point center;
  double radius = 0.0;
};

/// Checks membership and canonicalizes: torus angles reduced to [0, 2pi),
/// sphere vectors within 1e-6 of unit norm renormalized, SPD input symmetrized.
Point validate(const ManifoldSpec& spec, std::span<const double> raw);

double distance(const ManifoldSpec& spec, std::span<const double> p, std::span<const double> q);
double distance(const ManifoldSpec& spec, const Point& p, const Point& q);

/// Geodesic midpoint. Throws Errc::CutLocus when the minimizing geodesic is
/// not unique (antipodal sphere points, torus coordinates pi apart).
Point midpoint(const ManifoldSpec& spec, const Point& p, const Point& q);
/// Non-throwing variant writing into `out` (coord_count() entries).
bool try_midpoint(const ManifoldSpec& spec, std::span<const double> p, std::span<const double> q,
                  std::span<double> out);

GeodesicBall diameter_ball(const ManifoldSpec& spec, const Point& x1, const Point& x2);
/// Closed-ball test d(center, p) <= radius + kBallSlack, computed from distances.
bool contains(const ManifoldSpec& spec, const GeodesicBall& ball, const Point& p);

/// Is p in the closed ball with diameter x1x2? Euclidean specs use
/// <x1 - p, x2 - p>_w <= 0; other specs go through the prepared-ball path.
bool ball_contains(const ManifoldSpec& spec, std::span<const double> x1, std::span<const double> x2,
                   std::span<const double> p);
bool ball_contains(const ManifoldSpec& spec, const Point& x1, const Point& x2, const Point& p);

inline constexpr double kBallSlack = 1e-12;
inline constexpr double kCutLocusEps = 1e-9;

// Prepared balls: the expensive per-pair part of the containment test
// (midpoint, radius, and for SPD the midpoint's inverse square root) computed
// once, so a ball can be tested against many query points. ball_contains()
// itself is implemented with these, so cached and uncached evaluation perform
// the same floating-point operations.

/// Number of doubles prepare_ball writes per ball.
std::size_t prepared_ball_stride(const ManifoldSpec& spec);
/// Returns false (leaving outputs unspecified) on a cut-locus pair.
bool prepare_ball(const ManifoldSpec& spec, std::span<const double> x1, std::span<const double> x2,
                  std::span<double> center_out, double& radius_out);
bool prepared_ball_contains(const ManifoldSpec& spec, std::span<const double> center, double radius,
                            std::span<const double> p);

// SPD-cone helpers exposed for the samplers, rays and tests.

/// A#B = A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2}.
Matrix geometric_mean(const Matrix& a, const Matrix& b);
/// gamma(s) = A^{1/2} (A^{-1/2} B A^{-1/2})^s A^{1/2}.
Matrix spd_geodesic(const Matrix& a, const Matrix& b, double s);
/// || log(A^{-1/2} B A^{-1/2}) ||_F.
double spd_distance(const Matrix& a, const Matrix& b);

}  // namespace geodepth
