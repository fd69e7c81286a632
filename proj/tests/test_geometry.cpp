#include <doctest.h>

#include <cmath>
#include <numbers>

#include "geodepth/error.hpp"
#include "geodepth/geometry.hpp"
#include "helpers.hpp"

using namespace geodepth;
using std::numbers::pi;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::InvalidArgument;
}

Point pt(std::vector<double> v) { return Point(std::move(v)); }

}  // namespace

TEST_CASE("ManifoldSpec parse and print") {
  CHECK(ManifoldSpec::parse("sphere:3") == ManifoldSpec::sphere(3));
  CHECK(ManifoldSpec::parse("torus:2") == ManifoldSpec::torus(2));
  CHECK(ManifoldSpec::parse("spd:3").coord_count() == 9);
  CHECK(ManifoldSpec::parse("hilbert:50").weights().size() == 50);
  CHECK(ManifoldSpec::parse("hilbert:50").to_string() == "hilbert:50");
  CHECK(ManifoldSpec::parse("euclidean:4").to_string() == "euclidean:4");
  CHECK_THROWS_AS(ManifoldSpec::parse("cube:3"), Error);
  CHECK_THROWS_AS(ManifoldSpec::parse("sphere:1"), Error);
  CHECK_THROWS_AS(ManifoldSpec::euclidean(2, {1.0, 0.0}), Error);
}

TEST_CASE("validate") {
  const Point s = validate(ManifoldSpec::sphere(3), std::vector<double>{0, 0, 1.0000001});
  CHECK(s[2] == 1.0);
  const Point t = validate(ManifoldSpec::torus(2), std::vector<double>{2 * pi + 0.5, -0.5});
  CHECK(t[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(t[1] == doctest::Approx(2 * pi - 0.5).epsilon(1e-14));
  for (double v : t.coords()) CHECK((v >= 0.0 && v < 2 * pi));
  CHECK(code_of([] { validate(ManifoldSpec::spd(2), std::vector<double>{1, 0, 0, -1}); }) ==
        Errc::NotPositiveDefinite);
  CHECK(code_of([] { validate(ManifoldSpec::spd(2), std::vector<double>{1, 0.5, 0, 1}); }) == Errc::NotSymmetric);
  CHECK(code_of([] { validate(ManifoldSpec::sphere(3), std::vector<double>{0, 0, 1.1}); }) == Errc::NotUnitNorm);
  CHECK(code_of([] { validate(ManifoldSpec::euclidean(3), std::vector<double>{0, 0}); }) == Errc::WrongDimension);
}

TEST_CASE("distance examples") {
  CHECK(distance(ManifoldSpec::sphere(3), pt({1, 0, 0}), pt({0, 1, 0})) == doctest::Approx(pi / 2));
  CHECK(distance(ManifoldSpec::spd(2), pt({1, 0, 0, 1}), pt({4, 0, 0, 4})) ==
        doctest::Approx(std::sqrt(2.0) * std::log(4.0)).epsilon(1e-12));
  CHECK(distance(ManifoldSpec::torus(2), pt({0, 0}), pt({pi, pi / 2})) ==
        doctest::Approx(pi * std::sqrt(5.0) / 2).epsilon(1e-12));
  CHECK(distance(ManifoldSpec::euclidean(2, {4.0, 1.0}), pt({0, 0}), pt({1, 1})) ==
        doctest::Approx(std::sqrt(5.0)));
  CHECK(code_of([] { distance(ManifoldSpec::sphere(3), pt({1, 0}), pt({0, 1, 0})); }) == Errc::ManifoldMismatch);
}

TEST_CASE("sphere distance keeps precision for nearby points") {
  const double eps = 1e-9;
  const Point p = validate(ManifoldSpec::sphere(3), std::vector<double>{1, 0, 0});
  const Point q = validate(ManifoldSpec::sphere(3), std::vector<double>{std::cos(eps), std::sin(eps), 0});
  CHECK(distance(ManifoldSpec::sphere(3), p, q) == doctest::Approx(eps).epsilon(1e-6));
}

TEST_CASE("midpoint examples") {
  const Point m = midpoint(ManifoldSpec::sphere(3), pt({1, 0, 0}), pt({0, 1, 0}));
  CHECK(m[0] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(m[1] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(m[2] == 0.0);
  const Point g = midpoint(ManifoldSpec::spd(2), pt({1, 0, 0, 1}), pt({4, 0, 0, 9}));
  CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(g[3] == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(std::abs(g[1]) < 1e-14);
  const Point t = midpoint(ManifoldSpec::torus(1), pt({0.1}), pt({2 * pi - 0.1}));
  CHECK(std::min(t[0], 2 * pi - t[0]) < 1e-12);
  const Point e = midpoint(ManifoldSpec::euclidean(2), pt({0, 0}), pt({2, 4}));
  CHECK(e == pt({1, 2}));
}

TEST_CASE("midpoint on the cut locus") {
  CHECK(code_of([] { midpoint(ManifoldSpec::sphere(3), pt({1, 0, 0}), pt({-1, 0, 0})); }) == Errc::CutLocus);
  CHECK(code_of([] { midpoint(ManifoldSpec::torus(2), pt({0, 1}), pt({pi, 1.5})); }) == Errc::CutLocus);
}

TEST_CASE("ball_contains examples") {
  const auto e2 = ManifoldSpec::euclidean(2);
  CHECK(ball_contains(e2, pt({0, 0}), pt({2, 0}), pt({1, 1})));
  CHECK_FALSE(ball_contains(e2, pt({0, 0}), pt({2, 0}), pt({1, 1.0001})));
  CHECK_FALSE(ball_contains(ManifoldSpec::sphere(3), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})));
  RngStream rng(1);
  for (const auto& spec : testing::all_manifolds()) {
    for (int t = 0; t < 20; ++t) {
      const Point a = testing::random_point(spec, rng);
      const Point b = testing::random_point(spec, rng);
      CHECK(ball_contains(spec, a, b, a));
      CHECK(ball_contains(spec, a, b, b));
    }
  }
}

TEST_CASE("diameter ball and the generic containment test") {
  RngStream rng(2);
  for (const auto& spec : testing::all_manifolds()) {
    for (int t = 0; t < 200; ++t) {
      const Point a = testing::random_point(spec, rng);
      const Point b = testing::random_point(spec, rng);
      const Point p = testing::random_point(spec, rng);
      const GeodesicBall ball = diameter_ball(spec, a, b);
      CHECK(ball.radius == doctest::Approx(distance(spec, a, b) / 2));
      const double margin = distance(spec, ball.center, p) - ball.radius;
      if (std::abs(margin) > 1e-9) CHECK(contains(spec, ball, p) == ball_contains(spec, a, b, p));
    }
  }
}

TEST_CASE("midpoint bisects the geodesic") {
  RngStream rng(3);
  for (const auto& spec : testing::all_manifolds()) {
    for (int t = 0; t < 500; ++t) {
      const Point p = testing::random_point(spec, rng);
      const Point q = testing::random_point(spec, rng);
      const Point m = midpoint(spec, p, q);
      const double d = distance(spec, p, q);
      const double tol = 1e-8 * std::max(1.0, d);
      CHECK(std::abs(distance(spec, p, m) - d / 2) <= tol);
      CHECK(std::abs(distance(spec, m, q) - d / 2) <= tol);
    }
  }
}

TEST_CASE("metric axioms on random triples") {
  RngStream rng(4);
  for (const auto& spec : testing::all_manifolds()) {
    for (int t = 0; t < 300; ++t) {
      const Point a = testing::random_point(spec, rng);
      const Point b = testing::random_point(spec, rng);
      const Point c = testing::random_point(spec, rng);
      CHECK(distance(spec, a, b) == distance(spec, b, a));
      CHECK(distance(spec, a, a) <= 1e-12);
      CHECK(distance(spec, a, c) <= distance(spec, a, b) + distance(spec, b, c) + 1e-10);
    }
  }
}

TEST_CASE("Euclidean inner-product test agrees with the midpoint-distance test") {
  RngStream rng(5);
  const auto plain = ManifoldSpec::euclidean(3);
  const auto weighted = ManifoldSpec::euclidean(3, {0.5, 1.0, 2.0});
  std::size_t compared = 0;
  for (int t = 0; t < 100000; ++t) {
    const auto& spec = (t % 2 == 0) ? plain : weighted;
    const Point a = testing::random_point(spec, rng);
    const Point b = testing::random_point(spec, rng);
    const Point p = testing::random_point(spec, rng);
    double ip = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const double w = spec.weighted() ? spec.weights()[i] : 1.0;
      ip += w * (a[i] - p[i]) * (b[i] - p[i]);
    }
    if (std::abs(ip) <= 1e-9) continue;
    ++compared;
    const bool fast = ball_contains(spec, a, b, p);
    const bool generic = contains(spec, diameter_ball(spec, a, b), p);
    if (fast != generic) FAIL("disagreement at trial " << t);
  }
  CHECK(compared > 99000);
}

TEST_CASE("SPD congruence equivariance") {
  RngStream rng(6);
  const auto spec = ManifoldSpec::spd(3);
  for (int t = 0; t < 50; ++t) {
    const Matrix a = testing::random_spd(rng, 3);
    const Matrix b = testing::random_spd(rng, 3);
    const Matrix g = testing::random_matrix(rng, 3);
    auto cong = [&](const Matrix& m) {
      Matrix r = g * m * g.transpose();
      r.symmetrize();
      return r;
    };
    const double d = spd_distance(a, b);
    CHECK(std::abs(spd_distance(cong(a), cong(b)) - d) <= 1e-8 * std::max(1.0, d));
    const Matrix lhs = cong(geometric_mean(a, b));
    const Matrix rhs = geometric_mean(cong(a), cong(b));
    CHECK((lhs - rhs).frobenius_norm() <= 1e-8 * lhs.frobenius_norm());
    (void)spec;
  }
}

TEST_CASE("geometric mean satisfies X A^-1 X = B") {
  RngStream rng(7);
  for (int t = 0; t < 50; ++t) {
    const Matrix a = testing::random_spd(rng, 4);
    const Matrix b = testing::random_spd(rng, 4);
    const Matrix x = geometric_mean(a, b);
    const Matrix a_inv = spd_map(MatrixFunction::pow(-1.0), a);
    CHECK((x * a_inv * x - b).frobenius_norm() <= 1e-8 * b.frobenius_norm());
  }
}

TEST_CASE("spd geodesic endpoints and midpoint") {
  RngStream rng(8);
  const Matrix a = testing::random_spd(rng, 3);
  const Matrix b = testing::random_spd(rng, 3);
  CHECK((spd_geodesic(a, b, 0.0) - a).frobenius_norm() <= 1e-10 * a.frobenius_norm());
  CHECK((spd_geodesic(a, b, 1.0) - b).frobenius_norm() <= 1e-10 * b.frobenius_norm());
  CHECK((spd_geodesic(a, b, 0.5) - geometric_mean(a, b)).frobenius_norm() <= 1e-10 * b.frobenius_norm());
  const double d = spd_distance(a, b);
  CHECK(spd_distance(a, spd_geodesic(a, b, 0.25)) == doctest::Approx(0.25 * d).epsilon(1e-9));
}

TEST_CASE("sphere rotation equivariance of containment") {
  RngStream rng(9);
  const auto spec = ManifoldSpec::sphere(4);
  std::size_t agree = 0, total = 0;
  for (int t = 0; t < 2000; ++t) {
    const Matrix q = testing::random_orthogonal(rng, 4);
    const Point a = testing::random_point(spec, rng);
    const Point b = testing::random_point(spec, rng);
    const Point p = testing::random_point(spec, rng);
    const GeodesicBall ball = diameter_ball(spec, a, b);
    if (std::abs(distance(spec, ball.center, p) - ball.radius) < 1e-9) continue;
    const bool before = ball_contains(spec, a, b, p);
    const bool after = ball_contains(spec, validate(spec, testing::apply(q, a.coords())),
                                     validate(spec, testing::apply(q, b.coords())),
                                     validate(spec, testing::apply(q, p.coords())));
    agree += before == after;
    ++total;
  }
  CHECK(agree == total);
}
