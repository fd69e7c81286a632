#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>

#include "geodepth/error.hpp"
#include "geodepth/rng.hpp"
#include "geodepth/samplers.hpp"

using namespace geodepth;
using std::numbers::pi;

TEST_CASE("RngStream is deterministic and substreams are independent of consumption") {
  RngStream a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  RngStream c(42);
  const RngStream fresh(42);
  c.next_u64();
  CHECK(c.substream(3).next_u64() == fresh.substream(3).next_u64());
  CHECK(fresh.substream(3).next_u64() != fresh.substream(4).next_u64());
  RngStream u(1);
  double lo = 1, hi = 0, sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double x = u.uniform();
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    sum += x;
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
  for (int i = 0; i < 1000; ++i) CHECK(u.below(7) < 7);
}

TEST_CASE("normal and gamma moments") {
  RngStream rng(7);
  const int n = 200000;
  double s = 0, s2 = 0, g = 0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s += z;
    s2 += z * z;
    g += rng.gamma(2.5);
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(g / n == doctest::Approx(2.5).epsilon(0.01));
}

TEST_CASE("Wishart mean is m * Sigma") {
  RngStream rng(1);
  const Dataset ds = sample(ManifoldSpec::spd(3), SamplerSpec::wishart(Matrix::identity(3), 20), rng, 2000);
  for (std::size_t e = 0; e < 9; ++e) {
    std::vector<double> v(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) v[i] = ds.point(i)[e];
    double m = 0, m2 = 0;
    for (double x : v) m += x;
    m /= v.size();
    for (double x : v) m2 += (x - m) * (x - m);
    const double se = std::sqrt(m2 / (v.size() - 1) / v.size());
    const double target = (e % 4 == 0) ? 20.0 : 0.0;
    CHECK(std::abs(m - target) <= 5 * se);
  }
}

TEST_CASE("vMF: uniform at kappa 0, concentrated around mu at kappa 15") {
  RngStream rng(2);
  const Dataset u = sample(ManifoldSpec::sphere(3), SamplerSpec::vmf({0, 0, 1}, 0.0), rng, 2000);
  double r[3] = {0, 0, 0};
  for (std::size_t i = 0; i < u.size(); ++i)
    for (int l = 0; l < 3; ++l) r[l] += u.point(i)[l];
  CHECK(std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]) / 2000 < 0.1);

  const std::vector<double> mu = {1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1 / std::sqrt(3.0)};
  const Dataset c = sample(ManifoldSpec::sphere(3), SamplerSpec::vmf(mu, 15.0), rng, 5000);
  double s[3] = {0, 0, 0};
  for (std::size_t i = 0; i < c.size(); ++i)
    for (int l = 0; l < 3; ++l) s[l] += c.point(i)[l];
  const double norm = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
  const double cosang = (s[0] * mu[0] + s[1] * mu[1] + s[2] * mu[2]) / norm;
  CHECK(std::acos(std::min(1.0, cosang)) < 0.05);
  // Mean resultant length of a 3-d vMF is coth(kappa) - 1/kappa.
  CHECK(norm / 5000 == doctest::Approx(1 / std::tanh(15.0) - 1 / 15.0).epsilon(0.01));
}

TEST_CASE("MVM with zero coupling has von Mises marginals around mu") {
  RngStream rng(3);
  const std::vector<double> mu = {1.0, 5.5};
  const Dataset ds =
      sample(ManifoldSpec::torus(2), SamplerSpec::mvm(mu, {4.0, 10.0}, Matrix(2, 0.0)), rng, 2000);
  for (std::size_t j = 0; j < 2; ++j) {
    double c = 0, s = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      c += std::cos(ds.point(i)[j]);
      s += std::sin(ds.point(i)[j]);
    }
    const double mean = std::atan2(s, c);
    double diff = std::fmod(std::abs(mean - mu[j]), 2 * pi);
    diff = std::min(diff, 2 * pi - diff);
    CHECK(diff < 0.1);
  }
}

TEST_CASE("1-d MVM passes a chi-square goodness-of-fit test") {
  const double mu = 2.0, kappa = 3.0;
  RngStream rng(4);
  const std::size_t n = 5000;
  const Dataset ds = sample(ManifoldSpec::torus(1), SamplerSpec::mvm({mu}, {kappa}, Matrix(1, 0.0)), rng, n);
  auto dens = [&](double t) { return std::exp(kappa * std::cos(t - mu)); };
  // Normalizer by 256-point trapezoid rule (periodic integrand).
  double z = 0;
  for (int i = 0; i < 256; ++i) z += dens(2 * pi * i / 256.0);
  z *= 2 * pi / 256.0;
  const int bins = 20;
  std::vector<double> observed(bins, 0.0);
  for (std::size_t i = 0; i < n; ++i) observed[std::min(bins - 1, int(ds.point(i)[0] / (2 * pi) * bins))] += 1;
  double stat = 0;
  for (int b = 0; b < bins; ++b) {
    double p = 0;
    const double lo = 2 * pi * b / bins, w = 2 * pi / bins;
    for (int j = 0; j <= 64; ++j) p += (j == 0 || j == 64 ? 0.5 : 1.0) * dens(lo + w * j / 64.0);
    p *= w / 64.0 / z;
    const double expected = p * n;
    stat += (observed[b] - expected) * (observed[b] - expected) / expected;
  }
  const boost::math::chi_squared dist(bins - 1);
  CHECK(boost::math::cdf(boost::math::complement(dist, stat)) > 0.01);
}

TEST_CASE("sampling is reproducible and validated") {
  for (const std::string& name : preset_names()) {
    const Preset p = preset(name);
    RngStream a(9), b(9);
    const Dataset x = sample(p.manifold, p.sampler, a, 50);
    const Dataset y = sample(p.manifold, p.sampler, b, 50);
    CHECK(std::equal(x.flat().begin(), x.flat().end(), y.flat().begin()));
    for (std::size_t i = 0; i < x.size(); ++i) {
      const Point v = validate(p.manifold, x.point(i));
      CHECK(std::equal(v.coords().begin(), v.coords().end(), x.point(i).begin()));
    }
  }
}

TEST_CASE("presets carry the published parameters") {
  const Preset t = preset("torus-mvm-mixture");
  const auto& mix = std::get<MixtureParams>(t.sampler.params());
  CHECK(mix.weights == std::vector<double>{0.9, 0.1});
  const auto& m1 = std::get<MvmParams>(mix.components[0].params());
  const auto& m2 = std::get<MvmParams>(mix.components[1].params());
  CHECK(m1.mean == std::vector<double>{pi / 2, 0.0});
  CHECK(m1.concentration == std::vector<double>{20, 20});
  CHECK(m1.coupling(0, 1) == 1.0);
  CHECK(m1.coupling(0, 0) == 0.0);
  CHECK(m2.mean[0] == doctest::Approx(7 * pi / 4));
  CHECK(m2.concentration == std::vector<double>{100, 100});
  CHECK(m2.coupling == m1.coupling);

  const Preset w = preset("spd-wishart");
  CHECK(w.manifold == ManifoldSpec::spd(3));
  const auto& wp = std::get<WishartParams>(w.sampler.params());
  CHECK(wp.degrees == 20);
  CHECK(wp.scale == Matrix::identity(3));
  CHECK(w.reference[0] == 20.0);
  CHECK(w.reference_label == "20I");

  const Preset g = preset("gauss-contaminated-k10");
  const auto& gm = std::get<MixtureParams>(g.sampler.params());
  CHECK(gm.weights == std::vector<double>{0.9, 0.1});
  CHECK(std::get<GaussianParams>(gm.components[1].params()).mean == std::vector<double>(10, 2.0));
  CHECK(std::get<GaussianParams>(gm.components[0].params()).covariance == Matrix::identity(10));

  const Preset s = preset("sphere-vmf");
  CHECK(std::get<VmfParams>(s.sampler.params()).concentration == 15.0);
  const Preset sm = preset("sphere-vmf-mixture");
  const auto& smm = std::get<MixtureParams>(sm.sampler.params());
  CHECK(std::get<VmfParams>(smm.components[1].params()).mean_direction == std::vector<double>{0, 0, 1});
  CHECK(std::get<VmfParams>(smm.components[1].params()).concentration == 50.0);

  const Preset wm = preset("spd-wishart-mixture");
  const auto& wmm = std::get<MixtureParams>(wm.sampler.params());
  CHECK(std::get<WishartParams>(wmm.components[1].params()).degrees == 50);
  CHECK(std::get<WishartParams>(wmm.components[1].params()).scale(0, 0) == doctest::Approx(0.1));

  CHECK(preset("gauss-k7").manifold == ManifoldSpec::euclidean(7));
  CHECK_THROWS_AS(preset("no-such-design"), Error);
}

TEST_CASE("mixture labels follow the weights") {
  const Preset p = preset("gauss-contaminated-k10");
  RngStream rng(5);
  const LabeledSample s = sample_labeled(p.manifold, p.sampler, rng, 5000);
  std::size_t minority = 0;
  for (auto l : s.labels) minority += l == 1;
  CHECK(std::abs(static_cast<double>(minority) - 500.0) < 4 * std::sqrt(5000 * 0.09));
}

TEST_CASE("invalid sampler specs") {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  CHECK_THROWS_AS(SamplerSpec::vmf({1, 0, 0}, -1.0), Error);
  CHECK_THROWS_AS(SamplerSpec::wishart(Matrix::identity(3), 2), Error);
  CHECK_THROWS_AS(SamplerSpec::mixture({SamplerSpec::point_mass({0.0})}, {0.5}), Error);
  const double c[] = {1, 0, 0, 0};
  CHECK_THROWS_AS(SamplerSpec::mvm({0, 0}, {1, 1}, Matrix::from_row_major(c)), Error);
  CHECK_THROWS_AS(SamplerSpec::mvm({0, 0}, {-1, 1}, Matrix(2, 0.0)), Error);
  RngStream rng(1);
  CHECK(code([&] { sample(ManifoldSpec::sphere(3), SamplerSpec::standard_gaussian(3), rng, 3); }) ==
        Errc::SamplerFailure);
  CHECK(code([&] { sample(ManifoldSpec::euclidean(2), SamplerSpec::standard_gaussian(3), rng, 3); }) ==
        Errc::ManifoldMismatch);
}

TEST_CASE("point mass and extreme coupling") {
  RngStream rng(6);
  const Dataset pm = sample(ManifoldSpec::euclidean(2), SamplerSpec::point_mass({1.0, 2.0}), rng, 3);
  CHECK(pm.point(2)[1] == 2.0);
  const double c[] = {0, 1e5, 1e5, 0};
  try {
    sample(ManifoldSpec::torus(2), SamplerSpec::mvm({0, 0}, {0, 0}, Matrix::from_row_major(c)), rng, 10);
    FAIL("expected RejectionStall");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RejectionStall);
  }
}
