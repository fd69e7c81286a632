#pragma once

// Small dense square matrices and the symmetric spectral calculus used by the
// SPD cone. Sizes are tiny (k <= ~20), so everything is plain row-major storage
// and a cyclic Jacobi eigensolver.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace geodepth {

class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}
  /// Takes row-major storage; `values.size()` must be a perfect square.
  static Matrix from_row_major(std::span<const double> values);
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::span<const double> data() const noexcept { return a_; }
  std::span<double> data() noexcept { return a_; }

  Matrix transpose() const;
  double frobenius_norm() const;
  /// Largest |a_ij - a_ji|.
  double max_asymmetry() const;
  /// Replaces the matrix with (A + A^T) / 2.
  void symmetrize();

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(double s, const Matrix& a);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// A = V diag(values) V^T, eigenvalues sorted descending, eigenvectors in the
/// columns of V.
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
};

/// Cyclic Jacobi. Throws Errc::NotSymmetric when the asymmetry exceeds
/// 1e-9 * max(1, ||A||_F).
SymmetricEigen sym_eig(const Matrix& a);

/// Eigenvalues only (descending); same rotations as sym_eig.
std::vector<double> sym_eigenvalues(const Matrix& a);

/// Scalar function applied through the spectrum of a symmetric matrix.
class MatrixFunction {
 public:
  enum class Kind { Sqrt, InvSqrt, Log, Exp, Pow };

  static MatrixFunction sqrt() { return MatrixFunction(Kind::Sqrt, 0.5); }
  static MatrixFunction inv_sqrt() { return MatrixFunction(Kind::InvSqrt, -0.5); }
  static MatrixFunction log() { return MatrixFunction(Kind::Log, 0.0); }
  static MatrixFunction exp() { return MatrixFunction(Kind::Exp, 0.0); }
  static MatrixFunction pow(double s) { return MatrixFunction(Kind::Pow, s); }

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return exponent_; }
  bool requires_positive_definite() const noexcept { return kind_ != Kind::Exp; }
  double operator()(double lambda) const;

 private:
  MatrixFunction(Kind kind, double exponent) : kind_(kind), exponent_(exponent) {}
  Kind kind_;
  double exponent_;
};

/// V diag(f(lambda)) V^T, returned exactly symmetric. Throws
/// Errc::NotPositiveDefinite when f needs a positive spectrum and the smallest
/// eigenvalue is <= 1e-10 * largest.
Matrix spd_map(const MatrixFunction& f, const Matrix& a);

/// Lower-triangular L with L L^T = A, or nullopt when a pivot is not positive.
std::optional<Matrix> cholesky(const Matrix& a);

/// Positive-definiteness test with the relative eigenvalue floor used across
/// the library.
bool is_positive_definite(std::span<const double> eigenvalues_descending);

inline constexpr double kSpdEigenFloor = 1e-10;

}  // namespace geodepth
