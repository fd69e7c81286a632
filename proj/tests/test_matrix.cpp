#include <doctest.h>

#include <cmath>

#include "geodepth/error.hpp"
#include "geodepth/matrix.hpp"
#include "helpers.hpp"

using namespace geodepth;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

Matrix reconstruct(const SymmetricEigen& e) {
  return e.vectors * Matrix::diagonal(e.values) * e.vectors.transpose();
}

}  // namespace

TEST_CASE("sym_eig of a diagonal matrix") {
  const double d[] = {1.0, 3.0};
  const SymmetricEigen e = sym_eig(Matrix::diagonal(d));
  CHECK(e.values[0] == doctest::Approx(3.0));
  CHECK(e.values[1] == doctest::Approx(1.0));
  CHECK(std::abs(std::abs(e.vectors(1, 0)) - 1.0) < 1e-14);
}

TEST_CASE("sym_eig of the exchange matrix") {
  const double v[] = {0, 1, 1, 0};
  const SymmetricEigen e = sym_eig(Matrix::from_row_major(v));
  CHECK(e.values[0] == doctest::Approx(1.0));
  CHECK(e.values[1] == doctest::Approx(-1.0));
  CHECK(std::abs(std::abs(e.vectors(0, 0)) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(e.vectors(0, 0) * e.vectors(1, 0) > 0.0);
  CHECK(e.vectors(0, 1) * e.vectors(1, 1) < 0.0);
}

TEST_CASE("sym_eig reconstructs random symmetric matrices") {
  RngStream rng(11);
  for (int t = 0; t < 50; ++t) {
    Matrix a = testing::random_matrix(rng, 5);
    a = a + a.transpose();
    const SymmetricEigen e = sym_eig(a);
    CHECK(max_abs_diff(reconstruct(e), a) <= 1e-10 * a.frobenius_norm());
    CHECK(max_abs_diff(e.vectors.transpose() * e.vectors, Matrix::identity(5)) <= 1e-10);
    for (std::size_t i = 1; i < 5; ++i) CHECK(e.values[i - 1] >= e.values[i]);
  }
}

TEST_CASE("sym_eig rejects asymmetric input") {
  const double v[] = {1, 2, 0, 1};
  CHECK_THROWS_AS(sym_eig(Matrix::from_row_major(v)), Error);
  try {
    sym_eig(Matrix::from_row_major(v));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotSymmetric);
  }
}

TEST_CASE("spd_map basics") {
  const Matrix log_i = spd_map(MatrixFunction::log(), Matrix::identity(4));
  CHECK(log_i.frobenius_norm() == 0.0);
  const double d[] = {4.0, 9.0};
  const Matrix r = spd_map(MatrixFunction::sqrt(), Matrix::diagonal(d));
  CHECK(r(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r(1, 1) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(std::abs(r(0, 1)) < 1e-15);
}

TEST_CASE("spd_map: exp(log A) = A and pow(0.5) = sqrt") {
  RngStream rng(5);
  for (int t = 0; t < 30; ++t) {
    const Matrix a = testing::random_spd(rng, 4);
    const Matrix back = spd_map(MatrixFunction::exp(), spd_map(MatrixFunction::log(), a));
    CHECK(max_abs_diff(back, a) <= 1e-8 * a.frobenius_norm());
    const Matrix p = spd_map(MatrixFunction::pow(0.5), a);
    const Matrix s = spd_map(MatrixFunction::sqrt(), a);
    CHECK(max_abs_diff(p, s) <= 1e-10 * s.frobenius_norm());
    const Matrix is = spd_map(MatrixFunction::inv_sqrt(), a);
    CHECK(max_abs_diff(is * a * is, Matrix::identity(4)) <= 1e-10);
  }
}

TEST_CASE("spd_map rejects non-positive spectra except for exp") {
  const double d[] = {1.0, -1.0};
  const Matrix m = Matrix::diagonal(d);
  for (const auto& f : {MatrixFunction::log(), MatrixFunction::sqrt(), MatrixFunction::inv_sqrt(),
                        MatrixFunction::pow(0.3)}) {
    try {
      spd_map(f, m);
      FAIL("expected NotPositiveDefinite");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotPositiveDefinite);
    }
  }
  CHECK_NOTHROW(spd_map(MatrixFunction::exp(), m));
}

TEST_CASE("spd_map output is exactly symmetric") {
  RngStream rng(9);
  const Matrix a = testing::random_spd(rng, 6);
  CHECK(spd_map(MatrixFunction::log(), a).max_asymmetry() == 0.0);
}

TEST_CASE("cholesky") {
  RngStream rng(3);
  const Matrix a = testing::random_spd(rng, 5);
  const auto l = cholesky(a);
  REQUIRE(l.has_value());
  CHECK(max_abs_diff(*l * l->transpose(), a) <= 1e-12 * a.frobenius_norm());
  const double d[] = {1.0, -2.0};
  CHECK_FALSE(cholesky(Matrix::diagonal(d)).has_value());
}
