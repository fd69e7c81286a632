#include <doctest.h>

#include <cmath>

#include "geodepth/baselines.hpp"
#include "geodepth/error.hpp"
#include "geodepth/samplers.hpp"
#include "helpers.hpp"

using namespace geodepth;

namespace {

Dataset line(std::vector<double> xs) { return Dataset(ManifoldSpec::euclidean(1), std::span<const double>(xs)); }

}  // namespace

TEST_CASE("PD1 hand-computed values") {
  const Dataset ds = line({-1, 0, 1});
  const DirectionSet u = DirectionSet::from_vectors({{1.0}});
  const double p0[] = {0.0}, p3[] = {3.0};
  CHECK(pd1(ds, p0, u).value == 1.0);
  const Pd1Result r = pd1(ds, p3, u);
  CHECK(r.outlyingness == 3.0);
  CHECK(r.value == 0.25);
}

TEST_CASE("PD1 even-n median and zero MAD handling") {
  const Dataset ds = line({0, 1, 2, 10});  // median 1.5, MAD median{1.5,0.5,0.5,8.5} = 1
  const double p[] = {3.5};
  CHECK(pd1(ds, p, DirectionSet::from_vectors({{1.0}})).outlyingness == 2.0);

  // All points on the x axis: the y direction has zero MAD and is skipped.
  const Dataset flat(ManifoldSpec::euclidean(2), std::vector<double>{-1, 0, 0, 0, 1, 0});
  const DirectionSet both = DirectionSet::from_vectors({{1, 0}, {0, 1}});
  const double q[] = {2, 5};
  const Pd1Result r = pd1(flat, q, both);
  CHECK(r.skipped_directions == 1);
  CHECK(r.outlyingness == 2.0);
  try {
    pd1(flat, q, DirectionSet::from_vectors({{0, 1}}));
    FAIL("expected ZeroMAD");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroMAD);
  }
}

TEST_CASE("PD2 hand-computed values and bounds") {
  const Dataset ds = line({-1, 0, 1});
  const DirectionSet u = DirectionSet::from_vectors({{1.0}});
  const double p0[] = {0.0}, below[] = {-5.0};
  CHECK(pd2(ds, p0, u) == doctest::Approx(2.0 / 9.0).epsilon(1e-15));
  CHECK(pd2(ds, below, u) == 0.0);
  RngStream rng(1);
  const Dataset g = sample(ManifoldSpec::euclidean(3), SamplerSpec::standard_gaussian(3), rng, 200);
  const DirectionSet dirs = DirectionSet::random(3, 100, 2);
  for (int t = 0; t < 50; ++t) {
    const auto p = testing::normals(rng, 3);
    const double v = pd2(g, p, dirs);
    CHECK(v >= 0.0);
    CHECK(v <= 0.25);
    const double w = pd1(g, p, dirs).value;
    CHECK(w > 0.0);
    CHECK(w <= 1.0);
  }
}

TEST_CASE("direction sets") {
  const DirectionSet d = DirectionSet::random(5, 500, 3);
  CHECK(d.size() == 500);
  for (std::size_t i = 0; i < d.size(); ++i) {
    double n = 0;
    for (double x : d.direction(i)) n += x * x;
    CHECK(std::abs(std::sqrt(n) - 1.0) <= 1e-10);
  }
  const DirectionSet e = DirectionSet::random(5, 500, 3);
  CHECK(std::equal(d.direction(7).begin(), d.direction(7).end(), e.direction(7).begin()));
  CHECK_THROWS_AS(DirectionSet::from_vectors({{0.0, 0.0}}), Error);
}

TEST_CASE("projection depths are invariant under a common rotation") {
  RngStream rng(4);
  const auto spec = ManifoldSpec::euclidean(3);
  const Dataset g = sample(spec, SamplerSpec::standard_gaussian(3), rng, 101);
  const DirectionSet dirs = DirectionSet::random(3, 50, 5);
  const Matrix q = testing::random_orthogonal(rng, 3);
  std::vector<Point> rot;
  for (std::size_t i = 0; i < g.size(); ++i) rot.push_back(Point(testing::apply(q, g.point(i))));
  std::vector<std::vector<double>> rdirs;
  for (std::size_t i = 0; i < dirs.size(); ++i) rdirs.push_back(testing::apply(q, dirs.direction(i)));
  const Dataset rg(spec, rot);
  const DirectionSet rd = DirectionSet::from_vectors(rdirs);
  const auto p = testing::normals(rng, 3);
  const auto rp = testing::apply(q, p);
  CHECK(pd1(rg, rp, rd).value == doctest::Approx(pd1(g, p, dirs).value).epsilon(1e-12));
  CHECK(pd2(rg, rp, rd) == doctest::Approx(pd2(g, p, dirs)).epsilon(1e-12));
}

TEST_CASE("adding directions can only raise OU and lower ATD") {
  RngStream rng(6);
  const Dataset g = sample(ManifoldSpec::euclidean(4), SamplerSpec::standard_gaussian(4), rng, 100);
  DirectionSet dirs = DirectionSet::random(4, 10, 7);
  const auto p = testing::normals(rng, 4);
  double prev = pd1(g, p, dirs).outlyingness;
  for (int t = 0; t < 20; ++t) {
    dirs = dirs.with(testing::normals(rng, 4));
    const double ou = pd1(g, p, dirs).outlyingness;
    CHECK(ou >= prev);
    prev = ou;
  }

  const Preset s = preset("sphere-vmf");
  const Dataset sph = sample(s.manifold, s.sampler, rng, 100);
  const std::vector<double> x = {0.0, 1.0, 0.0};
  DirectionSet poles = DirectionSet::random(3, 5, 8);
  double last = atd_sphere(sph, x, poles);
  for (int t = 0; t < 20; ++t) {
    poles = poles.with(testing::normals(rng, 3));
    const double v = atd_sphere(sph, x, poles);
    CHECK(v <= last);
    CHECK(v >= 0.0);
    last = v;
  }
}

TEST_CASE("ATD examples") {
  const auto spec = ManifoldSpec::sphere(3);
  const DirectionSet poles = DirectionSet::random(3, 500, 1);
  const std::vector<double> p = {0, 0, 1};
  const Dataset same(spec, std::vector<Point>(5, Point(p)));
  CHECK(atd_sphere(same, p, poles) == 1.0);
  const Dataset anti(spec, std::vector<Point>(5, Point({0, 0, -1})));
  CHECK(atd_sphere(anti, p, poles) == 0.0);
  const Dataset four(spec, std::vector<Point>{Point({1, 0, 0}), Point({-1, 0, 0}), Point({0, 1, 0}),
                                              Point({0, -1, 0})});
  CHECK(atd_sphere(four, std::vector<double>{1, 0, 0}, poles) <= 0.5);
  const Dataset flat(ManifoldSpec::euclidean(3), std::vector<double>{0, 0, 1, 0, 1, 0});
  CHECK_THROWS_AS(atd_sphere(flat, p, poles), Error);
}

TEST_CASE("ATD ranks the vMF centre above the antipode") {
  const Preset s = preset("sphere-vmf");
  RngStream rng(9);
  const Dataset sph = sample(s.manifold, s.sampler, rng, 100);
  const DirectionSet poles = DirectionSet::random(3, 500, 1);
  CHECK(atd_sphere(sph, std::vector<double>{1, 0, 0}, poles) > 0.3);
  CHECK(atd_sphere(sph, std::vector<double>{-1, 0, 0}, poles) < 0.05);
}
