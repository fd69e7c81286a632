#include "geodepth/depth.hpp"

#include <algorithm>
#include <cmath>

#include "geodepth/baselines.hpp"
#include "geodepth/error.hpp"
#include "geodepth/parallel.hpp"

namespace geodepth {

namespace {

constexpr std::size_t kMcBlock = 4096;

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

void require_pairs(const Dataset& ds) {
  if (ds.size() < 2) throw Error(Errc::DegenerateSample, "depth needs at least two sample points");
}

double ratio(std::size_t hits, std::size_t total, std::size_t skipped) {
  if (skipped >= total) throw Error(Errc::DegenerateSample, "every sample pair lies on the cut locus");
  return static_cast<double>(hits) / static_cast<double>(total - skipped);
}

void require_same_manifold(const Dataset& ds, const Dataset& queries) {
  if (!(ds.spec() == queries.spec())) {
    throw Error(Errc::ManifoldMismatch, "queries live on " + queries.spec().to_string() + ", sample on " +
                                            ds.spec().to_string());
  }
}

// Counts pairs i < j with <x_i - p, x_j - p>_w <= 0. The per-term arithmetic is
// (w (x_i - p)) (x_j - p), accumulated in coordinate order, exactly as in
// prepared_ball_contains(); four j's are swept together for ILP.
std::size_t euclidean_hits(const Dataset& ds, std::span<const double> p, std::vector<double>& y,
                           std::vector<double>& z) {
  const std::size_t n = ds.size();
  const std::size_t k = ds.stride();
  const auto w = ds.spec().weights();
  y.resize(n * k);
  z.resize(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = ds.point(i);
    for (std::size_t l = 0; l < k; ++l) {
      const double d = x[l] - p[l];
      y[i * k + l] = d;
      z[i * k + l] = w.empty() ? d : w[l] * d;
    }
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double* zi = z.data() + i * k;
    std::size_t j = i + 1;
    for (; j + 4 <= n; j += 4) {
      const double* y0 = y.data() + j * k;
      const double* y1 = y0 + k;
      const double* y2 = y1 + k;
      const double* y3 = y2 + k;
      double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
      for (std::size_t l = 0; l < k; ++l) {
        s0 += zi[l] * y0[l];
        s1 += zi[l] * y1[l];
        s2 += zi[l] * y2[l];
        s3 += zi[l] * y3[l];
      }
      hits += (s0 <= 0.0) + (s1 <= 0.0) + (s2 <= 0.0) + (s3 <= 0.0);
    }
    for (; j < n; ++j) {
      const double* yj = y.data() + j * k;
      double s = 0.0;
      for (std::size_t l = 0; l < k; ++l) s += zi[l] * yj[l];
      hits += (s <= 0.0);
    }
  }
  return hits;
}

// Prepared diameter balls for a list of index pairs.
class BallCache {
 public:
  BallCache(const Dataset& ds, std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs, unsigned threads)
      : spec_(&ds.spec()),
        stride_(prepared_ball_stride(ds.spec())),
        pairs_(std::move(pairs)),
        centers_(pairs_.size() * stride_),
        radii_(pairs_.size()),
        valid_(pairs_.size()) {
    parallel_for(pairs_.size(), threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t t = begin; t < end; ++t) {
        const auto [i, j] = pairs_[t];
        valid_[t] = prepare_ball(ds.spec(), ds.point(i), ds.point(j),
                                 std::span<double>(centers_).subspan(t * stride_, stride_), radii_[t])
                        ? 1
                        : 0;
      }
    });
    for (auto v : valid_) skipped_ += (v == 0);
  }

  std::size_t size() const { return pairs_.size(); }
  std::size_t skipped() const { return skipped_; }

  std::size_t hits(std::span<const double> p) const {
    std::size_t h = 0;
    for (std::size_t t = 0; t < pairs_.size(); ++t) {
      if (valid_[t] != 0 &&
          prepared_ball_contains(*spec_, std::span<const double>(centers_).subspan(t * stride_, stride_), radii_[t], p)) {
        ++h;
      }
    }
    return h;
  }

 private:
  const ManifoldSpec* spec_;
  std::size_t stride_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_;
  std::vector<double> centers_;
  std::vector<double> radii_;
  std::vector<std::uint8_t> valid_;
  std::size_t skipped_ = 0;
};

std::vector<std::pair<std::uint32_t, std::uint32_t>> all_pairs(std::size_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(pair_count(n));
  for (std::uint32_t i = 0; i + 1 < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return pairs;
}

// Uncached sweep: same arithmetic as BallCache, balls rebuilt per query.
DepthValue uncached_depth(const Dataset& ds, std::span<const double> p) {
  const std::size_t n = ds.size();
  const ManifoldSpec& spec = ds.spec();
  std::vector<double> center(prepared_ball_stride(spec));
  std::size_t hits = 0;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double radius = 0.0;
      if (!prepare_ball(spec, ds.point(i), ds.point(j), center, radius)) {
        ++skipped;
        continue;
      }
      if (prepared_ball_contains(spec, center, radius, p)) ++hits;
    }
  }
  return DepthValue{ratio(hits, pair_count(n), skipped), skipped};
}

void check_query_length(const Dataset& ds, std::span<const double> p) {
  if (p.size() != ds.stride()) {
    throw Error(Errc::ManifoldMismatch, "query has " + std::to_string(p.size()) + " coordinates, expected " +
                                            std::to_string(ds.stride()));
  }
}

}  // namespace

const char* to_string(DepthMethod method) noexcept {
  switch (method) {
    case DepthMethod::DCOPS: return "dcops";
    case DepthMethod::PD1: return "pd1";
    case DepthMethod::PD2: return "pd2";
    case DepthMethod::ATD: return "atd";
  }
  return "unknown";
}

DepthMethod parse_depth_method(std::string_view text) {
  if (text == "dcops") return DepthMethod::DCOPS;
  if (text == "pd1") return DepthMethod::PD1;
  if (text == "pd2") return DepthMethod::PD2;
  if (text == "atd") return DepthMethod::ATD;
  throw Error(Errc::InvalidArgument, "unknown depth method '" + std::string(text) + "'");
}

DepthValue empirical_depth(const Dataset& ds, std::span<const double> p) {
  require_pairs(ds);
  check_query_length(ds, p);
  return uncached_depth(ds, p);
}

DepthValue empirical_depth(const Dataset& ds, const Point& p) { return empirical_depth(ds, p.coords()); }

DepthReport empirical_depth_batch(const Dataset& ds, const Dataset& queries, const BatchOptions& opts) {
  require_pairs(ds);
  require_same_manifold(ds, queries);
  const std::size_t n = ds.size();
  const std::size_t total = pair_count(n);
  DepthReport report;
  report.n = n;
  report.values.assign(queries.size(), 0.0);

  if (ds.spec().kind() == ManifoldKind::Euclidean) {
    parallel_for(queries.size(), opts.threads, [&](std::size_t begin, std::size_t end) {
      std::vector<double> y;
      std::vector<double> z;
      for (std::size_t q = begin; q < end; ++q) {
        report.values[q] = ratio(euclidean_hits(ds, queries.point(q), y, z), total, 0);
      }
    });
    return report;
  }

  if (n <= opts.cache_max_n) {
    const BallCache cache(ds, all_pairs(n), opts.threads);
    report.skipped_pairs = cache.skipped();
    if (cache.skipped() >= total) throw Error(Errc::DegenerateSample, "every sample pair lies on the cut locus");
    parallel_for(queries.size(), opts.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t q = begin; q < end; ++q) {
        report.values[q] = ratio(cache.hits(queries.point(q)), total, cache.skipped());
      }
    });
    return report;
  }

  std::vector<std::size_t> skipped(queries.size(), 0);
  parallel_for(queries.size(), opts.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t q = begin; q < end; ++q) {
      const DepthValue v = uncached_depth(ds, queries.point(q));
      report.values[q] = v.value;
      skipped[q] = v.skipped_pairs;
    }
  });
  report.skipped_pairs = skipped.empty() ? 0 : skipped.front();
  return report;
}

DepthReport empirical_depth_batch(const Dataset& ds, const std::vector<Point>& queries, const BatchOptions& opts) {
  return empirical_depth_batch(ds, Dataset(ds.spec(), queries), opts);
}

DepthReport empirical_depth_self(const Dataset& ds, const BatchOptions& opts) {
  return empirical_depth_batch(ds, ds, opts);
}

DepthReport subsampled_depth_batch(const Dataset& ds, const Dataset& queries, std::size_t pairs,
                                   std::uint64_t seed, const BatchOptions& opts) {
  require_pairs(ds);
  require_same_manifold(ds, queries);
  if (pairs == 0) throw Error(Errc::InvalidArgument, "pair subsample must be non-empty");
  const std::size_t n = ds.size();
  RngStream rng(seed);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> chosen(pairs);
  for (auto& pr : chosen) {
    auto i = static_cast<std::uint32_t>(rng.below(n));
    auto j = static_cast<std::uint32_t>(rng.below(n - 1));
    if (j >= i) ++j;
    pr = std::minmax(i, j);
  }
  const BallCache cache(ds, std::move(chosen), opts.threads);
  if (cache.skipped() >= pairs) throw Error(Errc::DegenerateSample, "every sampled pair lies on the cut locus");
  DepthReport report;
  report.n = n;
  report.seed = seed;
  report.skipped_pairs = cache.skipped();
  report.values.assign(queries.size(), 0.0);
  parallel_for(queries.size(), opts.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t q = begin; q < end; ++q) {
      report.values[q] = ratio(cache.hits(queries.point(q)), pairs, cache.skipped());
    }
  });
  return report;
}

std::vector<McEstimate> population_depth_mc_batch(const ManifoldSpec& spec, const SamplerSpec& sampler,
                                                  const std::vector<Point>& queries, std::size_t pairs,
                                                  std::uint64_t seed, unsigned threads) {
  if (pairs < 100) throw Error(Errc::InvalidArgument, "Monte-Carlo depth needs at least 100 pairs");
  if (sampler.coord_count() != spec.coord_count()) {
    throw Error(Errc::ManifoldMismatch, "sampler dimension does not match " + spec.to_string());
  }
  for (const Point& q : queries) {
    if (q.size() != spec.coord_count()) throw Error(Errc::ManifoldMismatch, "query dimension mismatch");
  }
  const Sampler base(sampler);
  const RngStream master(seed);
  const std::size_t blocks = (pairs + kMcBlock - 1) / kMcBlock;
  const std::size_t stride = prepared_ball_stride(spec);
  const std::size_t m = queries.size();
  std::vector<std::size_t> block_hits(blocks * m, 0);

  parallel_for(blocks, threads, [&](std::size_t begin, std::size_t end) {
    Sampler local = base;
    std::vector<double> x1(spec.coord_count());
    std::vector<double> x2(spec.coord_count());
    std::vector<double> center(stride);
    for (std::size_t b = begin; b < end; ++b) {
      RngStream rng = master.substream(b);
      const std::size_t count = std::min(kMcBlock, pairs - b * kMcBlock);
      for (std::size_t t = 0; t < count; ++t) {
        double radius = 0.0;
        std::size_t attempts = 0;
        do {
          if (++attempts > 1000) throw Error(Errc::SamplerFailure, "sampler keeps producing cut-locus pairs");
          local.draw(rng, x1);
          local.draw(rng, x2);
        } while (!prepare_ball(spec, x1, x2, center, radius));
        for (std::size_t q = 0; q < m; ++q) {
          if (prepared_ball_contains(spec, center, radius, queries[q].coords())) ++block_hits[b * m + q];
        }
      }
    }
  });

  std::vector<McEstimate> out(m);
  for (std::size_t q = 0; q < m; ++q) {
    std::size_t hits = 0;
    for (std::size_t b = 0; b < blocks; ++b) hits += block_hits[b * m + q];
    const double v = static_cast<double>(hits) / static_cast<double>(pairs);
    out[q] = McEstimate{v, std::sqrt(v * (1.0 - v) / static_cast<double>(pairs))};
  }
  return out;
}

McEstimate population_depth_mc(const ManifoldSpec& spec, const SamplerSpec& sampler, const Point& p,
                               std::size_t pairs, std::uint64_t seed, unsigned threads) {
  return population_depth_mc_batch(spec, sampler, {p}, pairs, seed, threads).front();
}

namespace {

DeepestPoint argmax(const std::vector<double>& values) {
  DeepestPoint best{0, values.front()};
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > best.value) best = DeepestPoint{i, values[i]};
  }
  return best;
}

}  // namespace

DeepestPoint deepest_point(const Dataset& ds, const BatchOptions& opts) {
  return argmax(empirical_depth_self(ds, opts).values);
}

DeepestPoint deepest_point_subsampled(const Dataset& ds, std::size_t pairs, std::uint64_t seed,
                                      const BatchOptions& opts) {
  return argmax(subsampled_depth_batch(ds, ds, pairs, seed, opts).values);
}

// ---------------------------------------------------------------------------
// Rays and profiles

RaySpec::RaySpec(ManifoldSpec spec, Point base, std::vector<double> direction, std::vector<double> grid)
    : spec_(std::move(spec)), base_(validate(spec_, base.coords())), direction_(std::move(direction)),
      grid_(std::move(grid)) {
  if (direction_.size() != spec_.coord_count()) {
    throw Error(Errc::WrongDimension, "ray direction needs " + std::to_string(spec_.coord_count()) + " values");
  }
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    if (!(grid_[i] > grid_[i - 1])) throw Error(Errc::InvalidArgument, "ray grid must be strictly increasing");
  }
  double norm2 = 0.0;
  switch (spec_.kind()) {
    case ManifoldKind::Euclidean: {
      const auto w = spec_.weights();
      for (std::size_t i = 0; i < direction_.size(); ++i)
        norm2 += (w.empty() ? 1.0 : w[i]) * direction_[i] * direction_[i];
      break;
    }
    case ManifoldKind::Torus:
      for (double v : direction_) norm2 += v * v;
      break;
    case ManifoldKind::Sphere: {
      double along = 0.0;
      for (std::size_t i = 0; i < direction_.size(); ++i) along += direction_[i] * base_[i];
      for (std::size_t i = 0; i < direction_.size(); ++i) {
        direction_[i] -= along * base_[i];
        norm2 += direction_[i] * direction_[i];
      }
      break;
    }
    case ManifoldKind::SPDCone: {
      Matrix s = Matrix::from_row_major(direction_);
      s.symmetrize();
      direction_.assign(s.data().begin(), s.data().end());
      for (double v : direction_) norm2 += v * v;
      break;
    }
  }
  if (!(norm2 > 0.0)) throw Error(Errc::InvalidArgument, "ray direction has zero length on the manifold");
  for (double& v : direction_) v /= std::sqrt(norm2);
}

Point RaySpec::at(double t) const {
  std::vector<double> c(base_.size());
  switch (spec_.kind()) {
    case ManifoldKind::Euclidean:
    case ManifoldKind::Torus:
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = base_[i] + t * direction_[i];
      break;
    case ManifoldKind::Sphere:
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::cos(t) * base_[i] + std::sin(t) * direction_[i];
      break;
    case ManifoldKind::SPDCone: {
      const Matrix b = Matrix::from_row_major(base_.coords());
      const Matrix root = spd_map(MatrixFunction::sqrt(), b);
      const Matrix e = spd_map(MatrixFunction::exp(), t * Matrix::from_row_major(direction_));
      Matrix out = root * e * root;
      out.symmetrize();
      c.assign(out.data().begin(), out.data().end());
      break;
    }
  }
  return validate(spec_, c);
}

namespace {

DepthProfile finish_profile(const RaySpec& ray, DepthMethod method, const std::vector<Point>& points,
                            const std::vector<double>& depth) {
  DepthProfile profile;
  profile.method = method;
  const auto grid = ray.grid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    profile.rows.push_back(ProfileRow{grid[i], distance(ray.spec(), ray.base(), points[i]), depth[i]});
    if (i > 0 && depth[i] > depth[i - 1]) ++profile.monotonicity_violations;
  }
  return profile;
}

std::vector<Point> ray_points(const RaySpec& ray) {
  std::vector<Point> pts;
  for (double t : ray.grid()) pts.push_back(ray.at(t));
  return pts;
}

}  // namespace

DepthProfile depth_profile(const Dataset& ds, const RaySpec& ray, DepthMethod method, const ProfileOptions& opts) {
  if (!(ds.spec() == ray.spec())) throw Error(Errc::ManifoldMismatch, "ray and sample live on different manifolds");
  const std::vector<Point> pts = ray_points(ray);
  std::vector<double> depth(pts.size());
  switch (method) {
    case DepthMethod::DCOPS:
      depth = empirical_depth_batch(ds, pts, opts.batch).values;
      break;
    case DepthMethod::PD1:
    case DepthMethod::PD2: {
      if (ds.spec().kind() != ManifoldKind::Euclidean) {
        throw Error(Errc::InvalidArgument, "projection depths need Euclidean data");
      }
      const DirectionSet dirs = DirectionSet::random(ds.stride(), opts.directions, opts.seed);
      if (method == DepthMethod::PD1) {
        const ProjectionOutlyingness model(ds, dirs);
        for (std::size_t i = 0; i < pts.size(); ++i) depth[i] = model.evaluate(pts[i].coords()).value;
      } else {
        const ProjectionCdfDepth model(ds, dirs);
        for (std::size_t i = 0; i < pts.size(); ++i) depth[i] = model.evaluate(pts[i].coords());
      }
      break;
    }
    case DepthMethod::ATD: {
      if (ds.spec().kind() != ManifoldKind::Sphere) throw Error(Errc::InvalidArgument, "ATD needs sphere data");
      const DirectionSet poles = DirectionSet::random(ds.stride(), opts.directions, opts.seed);
      for (std::size_t i = 0; i < pts.size(); ++i) depth[i] = atd_sphere(ds, pts[i].coords(), poles);
      break;
    }
  }
  return finish_profile(ray, method, pts, depth);
}

DepthProfile depth_profile(const SamplerSpec& sampler, const RaySpec& ray, std::size_t pairs, std::uint64_t seed,
                           unsigned threads) {
  const std::vector<Point> pts = ray_points(ray);
  const auto est = population_depth_mc_batch(ray.spec(), sampler, pts, pairs, seed, threads);
  std::vector<double> depth(est.size());
  for (std::size_t i = 0; i < est.size(); ++i) depth[i] = est[i].estimate;
  return finish_profile(ray, DepthMethod::DCOPS, pts, depth);
}

}  // namespace geodepth
