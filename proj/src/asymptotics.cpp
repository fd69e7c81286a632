#include "geodepth/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "geodepth/error.hpp"
#include "geodepth/parallel.hpp"
#include "geodepth/stats.hpp"

namespace geodepth {

namespace {

constexpr std::size_t kBlock = 4096;

// Runs `body(rng, begin, end, sums)` over fixed blocks of draws, each block on
// its own substream, and adds the per-block sums in block order.
template <std::size_t M, typename Body>
std::array<double, M> blocked_sums(std::size_t count, std::uint64_t seed, unsigned threads, Body body) {
  const RngStream master(seed);
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<std::array<double, M>> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b) {
      RngStream rng = master.substream(b);
      partial[b].fill(0.0);
      body(rng, b * kBlock, std::min(count, (b + 1) * kBlock), partial[b]);
    }
  });
  std::array<double, M> total{};
  for (const auto& p : partial)
    for (std::size_t m = 0; m < M; ++m) total[m] += p[m];
  return total;
}

McEstimate mean_and_error(double sum, double sum_sq, std::size_t count) {
  const double nn = static_cast<double>(count);
  const double mean = sum / nn;
  const double var = std::max(0.0, (sum_sq - nn * mean * mean) / (nn - 1.0));
  return McEstimate{mean, std::sqrt(var / nn)};
}

bool is_plain_standard_gaussian(const ManifoldSpec& spec, const SamplerSpec& sampler) {
  return spec.kind() == ManifoldKind::Euclidean && !spec.weighted() && sampler.is_standard_gaussian() &&
         sampler.coord_count() == spec.dim();
}

void draw_ball(const ManifoldSpec& spec, Sampler& sampler, RngStream& rng, std::span<const double> y,
               std::span<double> z, std::span<double> center, double& radius) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    sampler.draw(rng, z);
    if (prepare_ball(spec, y, z, center, radius)) return;
  }
  throw Error(Errc::SamplerFailure, "sampler keeps producing cut-locus pairs");
}

}  // namespace

double gx_gaussian(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(Errc::WrongDimension, "x and y differ in dimension");
  double num = 0.0;
  double norm2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    num += d * x[i];
    norm2 += d * d;
  }
  if (!(norm2 > 0.0)) throw Error(Errc::CoincidentPoints, "g_x(y) is undefined for y == x");
  return stats::normal_upper_tail(num / std::sqrt(norm2));
}

McEstimate p2_gaussian(std::span<const double> x, std::size_t draws, std::uint64_t seed, unsigned threads) {
  if (draws < 2) throw Error(Errc::InvalidArgument, "p2_gaussian needs at least two draws");
  const std::size_t k = x.size();
  const auto sums = blocked_sums<2>(draws, seed, threads, [&](RngStream& rng, std::size_t begin, std::size_t end,
                                                              std::array<double, 2>& acc) {
    std::vector<double> y(k);
    for (std::size_t t = begin; t < end; ++t) {
      for (double& v : y) v = rng.normal();
      const double g = gx_gaussian(x, y);
      acc[0] += g;
      acc[1] += g * g;
    }
  });
  return mean_and_error(sums[0], sums[1], draws);
}

Sigma2Estimate sigma2_marginal(const ManifoldSpec& spec, const SamplerSpec& sampler, const Point& x,
                               std::size_t draws, std::uint64_t seed, unsigned threads) {
  const McEstimate p2 = is_plain_standard_gaussian(spec, sampler)
                            ? p2_gaussian(validate(spec, x.coords()).coords(), draws, seed, threads)
                            : population_depth_mc(spec, sampler, validate(spec, x.coords()), draws, seed, threads);
  return Sigma2Estimate{4.0 * p2.estimate * (1.0 - p2.estimate), 4.0 * std::abs(1.0 - 2.0 * p2.estimate) * p2.std_error,
                        p2.estimate, p2.std_error};
}

McEstimate zeta1(const ManifoldSpec& spec, const SamplerSpec& sampler, const Point& x, std::size_t outer,
                 std::size_t inner, std::uint64_t seed, unsigned threads) {
  if (outer < 2 || inner < 2) throw Error(Errc::InvalidArgument, "zeta1 needs at least two outer and inner draws");
  const Point xv = validate(spec, x.coords());
  const Sampler base(sampler);
  const std::size_t stride = prepared_ball_stride(spec);
  const std::size_t c = spec.coord_count();
  const RngStream master(seed);
  std::vector<double> ghat(outer);
  parallel_for(outer, threads, [&](std::size_t begin, std::size_t end) {
    Sampler local = base;
    std::vector<double> y(c), z(c), center(stride);
    for (std::size_t o = begin; o < end; ++o) {
      RngStream rng = master.substream(o);
      local.draw(rng, y);
      std::size_t hits = 0;
      for (std::size_t i = 0; i < inner; ++i) {
        double radius = 0.0;
        draw_ball(spec, local, rng, y, z, center, radius);
        hits += prepared_ball_contains(spec, center, radius, xv.coords());
      }
      ghat[o] = static_cast<double>(hits) / static_cast<double>(inner);
    }
  });
  double noise = 0.0;
  for (double g : ghat) noise += g * (1.0 - g);
  noise /= static_cast<double>(outer) * static_cast<double>(inner - 1);
  const double m = stats::mean(ghat);
  std::vector<double> sq(outer);
  for (std::size_t o = 0; o < outer; ++o) sq[o] = (ghat[o] - m) * (ghat[o] - m);
  const double var = stats::variance(ghat);
  return McEstimate{std::max(0.0, var - noise), std::sqrt(stats::variance(sq) / static_cast<double>(outer))};
}

McEstimate zeta1_gaussian(std::span<const double> x, std::size_t outer, std::uint64_t seed, unsigned threads) {
  if (outer < 2) throw Error(Errc::InvalidArgument, "zeta1 needs at least two draws");
  const std::size_t k = x.size();
  const RngStream master(seed);
  const std::size_t blocks = (outer + kBlock - 1) / kBlock;
  std::vector<double> g(outer);
  parallel_for(blocks, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> y(k);
    for (std::size_t b = begin; b < end; ++b) {
      RngStream rng = master.substream(b);
      for (std::size_t t = b * kBlock; t < std::min(outer, (b + 1) * kBlock); ++t) {
        for (double& v : y) v = rng.normal();
        g[t] = gx_gaussian(x, y);
      }
    }
  });
  const double m = stats::mean(g);
  std::vector<double> sq(outer);
  for (std::size_t o = 0; o < outer; ++o) sq[o] = (g[o] - m) * (g[o] - m);
  return McEstimate{stats::variance(g), std::sqrt(stats::variance(sq) / static_cast<double>(outer))};
}

CLTReport clt_experiment(const ManifoldSpec& spec, const SamplerSpec& sampler, const Point& x, std::size_t n,
                         std::size_t reps, std::uint64_t seed, const CltOptions& opts) {
  if (reps < 100) throw Error(Errc::InvalidArgument, "CLT experiment needs at least 100 replications");
  if (n < 2) throw Error(Errc::InvalidArgument, "CLT experiment needs n >= 2");
  CLTReport report;
  report.x = validate(spec, x.coords());
  report.n = n;
  report.reps = reps;

  // Substream layout: 0 reference, 1 zeta1, 2 + r replication r.
  const RngStream master(seed);
  const bool gaussian = is_plain_standard_gaussian(spec, sampler);
  const McEstimate ref = gaussian ? p2_gaussian(report.x.coords(), opts.reference_pairs, master.substream(0).next_u64(),
                                                opts.threads)
                                  : population_depth_mc(spec, sampler, report.x, opts.reference_pairs,
                                                        master.substream(0).next_u64(), opts.threads);
  report.reference = ref.estimate;
  report.reference_std_error = ref.std_error;
  report.sigma2_marginal = 4.0 * ref.estimate * (1.0 - ref.estimate);

  const std::uint64_t zeta_seed = master.substream(1).next_u64();
  const McEstimate z = gaussian ? zeta1_gaussian(report.x.coords(), opts.zeta_outer, zeta_seed, opts.threads)
                                : zeta1(spec, sampler, report.x, std::min(opts.zeta_outer, std::size_t{2000}),
                                        opts.zeta_inner, zeta_seed, opts.threads);
  report.sigma2_proj = 4.0 * z.estimate;
  report.sigma2_proj_std_error = 4.0 * z.std_error;

  const std::vector<Point> query{report.x};
  const double root_n = std::sqrt(static_cast<double>(n));
  report.scaled_deviations.assign(reps, 0.0);
  parallel_for(reps, opts.threads, [&](std::size_t begin, std::size_t end) {
    BatchOptions single;
    single.threads = 1;
    for (std::size_t r = begin; r < end; ++r) {
      RngStream rng = master.substream(2 + r);
      const Dataset ds = sample(spec, sampler, rng, n);
      const double v = empirical_depth_batch(ds, query, single).values.front();
      report.scaled_deviations[r] = root_n * (v - report.reference);
    }
  });
  report.mean = stats::mean(report.scaled_deviations);
  report.variance = stats::variance(report.scaled_deviations);
  report.mean_std_error = std::sqrt(report.variance / static_cast<double>(reps));
  report.ks_distance = stats::ks_distance_to_fitted_normal(report.scaled_deviations);
  return report;
}

ConsistencyReport gc_experiment(const ManifoldSpec& spec, const SamplerSpec& sampler, const std::vector<Point>& grid,
                                const std::vector<std::size_t>& n_values, std::uint64_t seed,
                                const GcOptions& opts) {
  if (grid.empty()) throw Error(Errc::InvalidArgument, "consistency grid is empty");
  if (n_values.empty() || n_values.front() < 2) throw Error(Errc::InvalidArgument, "n sequence must start at n >= 2");
  for (std::size_t i = 1; i < n_values.size(); ++i) {
    if (n_values[i] <= n_values[i - 1]) throw Error(Errc::InvalidArgument, "n sequence must be increasing");
  }
  ConsistencyReport report;
  for (const Point& g : grid) report.grid.push_back(validate(spec, g.coords()));
  report.n_values = n_values;

  const RngStream master(seed);
  const auto ref = population_depth_mc_batch(spec, sampler, report.grid, opts.reference_pairs,
                                             master.substream(0).next_u64(), opts.threads);
  for (const auto& r : ref) report.reference.push_back(r.estimate);

  RngStream rng = master.substream(1);
  const Dataset full = sample(spec, sampler, rng, n_values.back());
  const Dataset queries(spec, report.grid);
  BatchOptions batch;
  batch.threads = opts.threads;
  for (std::size_t n : n_values) {
    const Dataset prefix(spec, full.flat().first(n * full.stride()));
    const DepthReport d = empirical_depth_batch(prefix, queries, batch);
    double sup = 0.0;
    for (std::size_t q = 0; q < d.values.size(); ++q) sup = std::max(sup, std::abs(d.values[q] - report.reference[q]));
    report.sup_errors.push_back(sup);
  }
  return report;
}

std::vector<Point> default_grid(const Preset& preset, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw Error(Errc::InvalidArgument, "grid needs at least one point");
  const ManifoldSpec& spec = preset.manifold;
  std::vector<Point> grid;
  constexpr double golden = 2.399963229728653;  // pi (3 - sqrt 5)
  const auto& params = preset.sampler.params();

  if (preset.sampler.is_standard_gaussian() && spec.kind() == ManifoldKind::Euclidean && spec.dim() >= 2) {
    for (std::size_t i = 0; i < count; ++i) {
      const double r = 2.0 * std::sqrt((static_cast<double>(i) + 0.5) / static_cast<double>(count));
      std::vector<double> c(spec.dim(), 0.0);
      c[0] = r * std::cos(golden * static_cast<double>(i));
      c[1] = r * std::sin(golden * static_cast<double>(i));
      grid.push_back(validate(spec, c));
    }
    return grid;
  }
  if (const auto* vmf = std::get_if<VmfParams>(&params); vmf != nullptr && spec.kind() == ManifoldKind::Sphere) {
    const std::vector<double>& mu = vmf->mean_direction;
    const std::size_t k = mu.size();
    // Orthonormal tangent pair at mu by Gram-Schmidt on the coordinate axes.
    std::vector<std::vector<double>> basis;
    for (std::size_t axis = 0; axis < k && basis.size() < 2; ++axis) {
      std::vector<double> e(k, 0.0);
      e[axis] = 1.0;
      auto project_out = [&](const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t l = 0; l < k; ++l) s += e[l] * b[l];
        for (std::size_t l = 0; l < k; ++l) e[l] -= s * b[l];
      };
      project_out(mu);
      for (const auto& b : basis) project_out(b);
      double norm = 0.0;
      for (double v : e) norm += v * v;
      if (norm < 1e-6) continue;
      for (double& v : e) v /= std::sqrt(norm);
      basis.push_back(e);
    }
    for (std::size_t i = 0; i < count; ++i) {
      const double angle = 0.8 * std::sqrt((static_cast<double>(i) + 0.5) / static_cast<double>(count));
      const double phi = golden * static_cast<double>(i);
      std::vector<double> c(k);
      for (std::size_t l = 0; l < k; ++l) {
        double tangent = std::cos(phi) * basis[0][l];
        if (basis.size() > 1) tangent += std::sin(phi) * basis[1][l];
        c[l] = std::cos(angle) * mu[l] + std::sin(angle) * tangent;
      }
      grid.push_back(validate(spec, c));
    }
    return grid;
  }
  RngStream rng(seed);
  const Dataset draws = sample(spec, preset.sampler, rng, count);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(draws.point_copy(i));
  return grid;
}

std::vector<VarianceCurveRow> variance_curve(const std::vector<std::size_t>& ks, const std::vector<double>& ls,
                                             std::size_t draws, std::uint64_t seed, unsigned threads) {
  std::vector<VarianceCurveRow> rows;
  const RngStream master(seed);
  std::uint64_t index = 0;
  for (std::size_t k : ks) {
    if (k == 0) throw Error(Errc::InvalidArgument, "dimension must be positive");
    const ManifoldSpec spec = ManifoldSpec::euclidean(k);
    const SamplerSpec gauss = SamplerSpec::standard_gaussian(k);
    for (double l : ls) {
      std::vector<double> x(k, 0.0);
      x[0] = l;
      rows.push_back(VarianceCurveRow{
          k, l, sigma2_marginal(spec, gauss, Point(x), draws, master.substream(index++).next_u64(), threads)});
    }
  }
  return rows;
}

McEstimate bridge_covariance(const ManifoldSpec& spec, const SamplerSpec& sampler, const Point& x, const Point& y,
                             std::size_t pairs, std::uint64_t seed) {
  if (pairs < 100) throw Error(Errc::InvalidArgument, "bridge covariance needs at least 100 pairs");
  const Point xv = validate(spec, x.coords());
  const Point yv = validate(spec, y.coords());
  Sampler local(sampler);
  RngStream rng(seed);
  const std::size_t c = spec.coord_count();
  std::vector<double> a(c), b(c), center(prepared_ball_stride(spec));
  std::vector<double> ix(pairs), iy(pairs);
  for (std::size_t t = 0; t < pairs; ++t) {
    local.draw(rng, a);
    double radius = 0.0;
    draw_ball(spec, local, rng, a, b, center, radius);
    ix[t] = prepared_ball_contains(spec, center, radius, xv.coords()) ? 1.0 : 0.0;
    iy[t] = prepared_ball_contains(spec, center, radius, yv.coords()) ? 1.0 : 0.0;
  }
  const double mx = stats::mean(ix);
  const double my = stats::mean(iy);
  std::vector<double> prod(pairs);
  for (std::size_t t = 0; t < pairs; ++t) prod[t] = (ix[t] - mx) * (iy[t] - my);
  const double cov = stats::mean(prod);
  return McEstimate{cov, std::sqrt(stats::variance(prod) / static_cast<double>(pairs))};
}

}  // namespace geodepth
