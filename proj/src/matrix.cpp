#include "geodepth/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "geodepth/error.hpp"

namespace geodepth {

Matrix Matrix::from_row_major(std::span<const double> values) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(values.size()))));
  if (n * n != values.size()) {
    throw Error(Errc::WrongDimension, "matrix storage of length " + std::to_string(values.size()) +
                                          " is not square");
  }
  Matrix m(n);
  std::copy(values.begin(), values.end(), m.a_.begin());
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double Matrix::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
  return worst;
}

void Matrix::symmetrize() {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
      (*this)(i, j) = v;
      (*this)(j, i) = v;
    }
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.n_;
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  Matrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  Matrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
  return c;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix c = a;
  for (double& v : c.a_) v *= s;
  return c;
}

namespace {

constexpr int kMaxSweeps = 100;

void check_symmetric(const Matrix& a) {
  const double tol = 1e-9 * std::max(1.0, a.frobenius_norm());
  if (a.max_asymmetry() > tol) {
    throw Error(Errc::NotSymmetric, "asymmetry " + std::to_string(a.max_asymmetry()) +
                                        " exceeds tolerance");
  }
}

// Cyclic Jacobi sweeps on a symmetrized copy. When `v` is non-null the
// rotations are accumulated into it.
std::vector<double> jacobi(Matrix a, Matrix* v) {
  const std::size_t n = a.size();
  a.symmetrize();
  const double threshold = 1e-14 * a.frobenius_norm();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(2.0 * off) <= threshold) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        if (v != nullptr) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = (*v)(k, p);
            const double vkq = (*v)(k, q);
            (*v)(k, p) = c * vkp - s * vkq;
            (*v)(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
  return values;
}

}  // namespace

SymmetricEigen sym_eig(const Matrix& a) {
  check_symmetric(a);
  const std::size_t n = a.size();
  Matrix v = Matrix::identity(n);
  const std::vector<double> raw = jacobi(a, &v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return raw[i] > raw[j]; });

  SymmetricEigen out{std::vector<double>(n), Matrix(n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = raw[order[c]];
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

std::vector<double> sym_eigenvalues(const Matrix& a) {
  check_symmetric(a);
  std::vector<double> values = jacobi(a, nullptr);
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

double MatrixFunction::operator()(double lambda) const {
  switch (kind_) {
    case Kind::Sqrt: return std::sqrt(lambda);
    case Kind::InvSqrt: return 1.0 / std::sqrt(lambda);
    case Kind::Log: return std::log(lambda);
    case Kind::Exp: return std::exp(lambda);
    case Kind::Pow: return std::pow(lambda, exponent_);
  }
  return lambda;
}

bool is_positive_definite(std::span<const double> eigenvalues_descending) {
  if (eigenvalues_descending.empty()) return false;
  const double top = eigenvalues_descending.front();
  return top > 0.0 && eigenvalues_descending.back() > kSpdEigenFloor * top;
}

Matrix spd_map(const MatrixFunction& f, const Matrix& a) {
  const SymmetricEigen eig = sym_eig(a);
  if (f.requires_positive_definite() && !is_positive_definite(eig.values)) {
    throw Error(Errc::NotPositiveDefinite, "matrix function needs a positive-definite argument");
  }
  const std::size_t n = a.size();
  std::vector<double> fl(n);
  for (std::size_t k = 0; k < n; ++k) fl[k] = f(eig.values[k]);
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += eig.vectors(i, k) * fl[k] * eig.vectors(j, k);
      out(i, j) = s;
      out(j, i) = s;
    }
  }
  return out;
}

std::optional<Matrix> cholesky(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix l(n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return std::nullopt;
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

}  // namespace geodepth
