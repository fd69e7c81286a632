#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "geodepth/asymptotics.hpp"
#include "geodepth/baselines.hpp"
#include "geodepth/depth.hpp"
#include "geodepth/samplers.hpp"
#include "geodepth/stats.hpp"
#include "geodepth/table.hpp"

namespace geodepth::cli {

namespace {

struct OutputOptions {
  std::string out = "-";
  std::string format = "csv";
  std::string svg;
  unsigned threads = 0;
};

std::vector<double> parse_doubles(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw Error(Errc::InvalidArgument, std::string(what) + ": '" + token + "' is not a number");
    }
  }
  if (out.empty()) throw Error(Errc::InvalidArgument, std::string(what) + " is empty");
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text, const char* what) {
  std::vector<std::size_t> out;
  for (double v : parse_doubles(text, what)) {
    if (!(v >= 1.0) || v != std::floor(v)) {
      throw Error(Errc::InvalidArgument, std::string(what) + " needs positive integers");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

// "a:b:step" -> a, a + step, ..., up to b (inclusive within rounding).
std::vector<double> parse_range(const std::string& text, const char* what) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ':')) parts.push_back(parse_doubles(token, what).front());
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw Error(Errc::InvalidArgument, std::string(what) + " must look like start:stop:step with step > 0");
  }
  std::vector<double> grid;
  const auto steps = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  for (std::size_t i = 0; i <= steps; ++i) grid.push_back(parts[0] + static_cast<double>(i) * parts[2]);
  return grid;
}

// Command line as recorded in output headers. Thread counts and output paths
// do not change table contents, so they are left out.
std::string recorded_command(const std::vector<std::string>& args) {
  static const std::vector<std::string> skip_with_value = {"--threads", "--out", "--svg"};
  std::string cmd = "geodepth";
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (std::find(skip_with_value.begin(), skip_with_value.end(), a) != skip_with_value.end()) {
      ++i;
      continue;
    }
    bool skip = false;
    for (const auto& s : skip_with_value) skip = skip || a.rfind(s + "=", 0) == 0;
    if (!skip) cmd += " " + a;
  }
  return cmd;
}

void emit(const Table& table, const TableMetadata& meta, const OutputOptions& o, std::ostream& out,
          const std::string& svg) {
  std::string text;
  if (o.format == "csv") {
    text = to_csv(table, meta);
  } else if (o.format == "json") {
    text = to_json(table, meta);
  } else {
    text = svg;
  }
  if (o.out == "-") {
    out << text;
  } else {
    write_text_file(o.out, text);
  }
  if (!o.svg.empty()) write_text_file(o.svg, svg);
}

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--out", o.out, "Output file ('-' for stdout)");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json", "svg"}));
  cmd->add_option("--svg", o.svg, "Also write an SVG plot to this file");
  cmd->add_option("--threads", o.threads, "Worker cap (default: GEODEPTH_THREADS or all cores)");
}

std::string scatter_svg(const Table& table, const std::string& x, const std::string& y, const std::string& title,
                        const std::vector<std::size_t>* groups) {
  const auto xs = table.numeric_column(x);
  const auto ys = table.numeric_column(y);
  if (groups == nullptr) return to_svg({SvgSeries{y, xs, ys, false, "#1f77b4"}}, title, x, y);
  SvgSeries major{"majority", {}, {}, false, "#1f77b4"};
  SvgSeries minor{"outliers", {}, {}, false, "#d62728"};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    SvgSeries& s = (*groups)[i] == 0 ? major : minor;
    s.x.push_back(xs[i]);
    s.y.push_back(ys[i]);
  }
  return to_svg({major, minor}, title, x, y);
}

// --- depth ------------------------------------------------------------------

struct DepthArgs {
  std::string manifold;
  std::string input;
  std::string queries;
  bool query_self = false;
  std::string method = "dcops";
  std::uint64_t seed = 0;
  std::size_t directions = kDefaultDirectionCount;
  std::size_t pairs = 0;
  OutputOptions output;
};

int cmd_depth(const DepthArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  const ManifoldSpec spec = ManifoldSpec::parse(a.manifold);
  const DepthMethod method = parse_depth_method(a.method);
  const Dataset ds = read_dataset_csv(a.input, spec);
  const std::optional<Dataset> external =
      a.query_self ? std::nullopt : std::optional<Dataset>(read_dataset_csv(a.queries, spec));
  const Dataset& queries = a.query_self ? ds : *external;

  BatchOptions batch;
  batch.threads = a.output.threads;
  std::vector<double> values(queries.size());
  std::size_t skipped = 0;
  switch (method) {
    case DepthMethod::DCOPS: {
      const DepthReport r = a.pairs > 0 ? subsampled_depth_batch(ds, queries, a.pairs, a.seed, batch)
                                        : empirical_depth_batch(ds, queries, batch);
      values = r.values;
      skipped = r.skipped_pairs;
      break;
    }
    case DepthMethod::PD1: {
      const DirectionSet dirs = DirectionSet::random(ds.stride(), a.directions, a.seed);
      const ProjectionOutlyingness model(ds, dirs);
      for (std::size_t q = 0; q < queries.size(); ++q) {
        const Pd1Result r = model.evaluate(queries.point(q));
        values[q] = r.value;
        skipped = r.skipped_directions;
      }
      break;
    }
    case DepthMethod::PD2: {
      const DirectionSet dirs = DirectionSet::random(ds.stride(), a.directions, a.seed);
      const ProjectionCdfDepth model(ds, dirs);
      for (std::size_t q = 0; q < queries.size(); ++q) values[q] = model.evaluate(queries.point(q));
      break;
    }
    case DepthMethod::ATD: {
      const DirectionSet poles = DirectionSet::random(ds.stride(), a.directions, a.seed);
      for (std::size_t q = 0; q < queries.size(); ++q) values[q] = atd_sphere(ds, queries.point(q), poles);
      break;
    }
  }

  Table table({"query_index", "depth", "method", "n", "skipped_pairs"});
  for (std::size_t q = 0; q < values.size(); ++q) {
    table.add_row({static_cast<std::int64_t>(q), values[q], std::string(to_string(method)),
                   static_cast<std::int64_t>(ds.size()), static_cast<std::int64_t>(skipped)});
  }
  TableMetadata meta{recorded_command(args), a.seed, GEODEPTH_VERSION, spec.to_string(), {}};
  std::vector<double> idx(values.size());
  for (std::size_t q = 0; q < idx.size(); ++q) idx[q] = static_cast<double>(q);
  emit(table, meta, a.output, out, to_svg({SvgSeries{"depth", idx, values}}, "depth", "query_index", "depth"));
  return 0;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string preset;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t score = 0;
  std::size_t pairs = 0;
  std::size_t directions = kDefaultDirectionCount;
  std::string ray;
  std::string lambda = "0:4:0.1";
  OutputOptions output;
};

std::vector<double> ray_direction(const Preset& p, const std::string& ray) {
  if (ray.size() < 2 || ray[0] != 'e') throw Error(Errc::InvalidArgument, "--profile-ray must look like e1, e2, ...");
  std::size_t axis = 0;
  try {
    axis = std::stoul(ray.substr(1));
  } catch (const std::exception&) {
    throw Error(Errc::InvalidArgument, "--profile-ray must look like e1, e2, ...");
  }
  const std::size_t c = p.manifold.coord_count();
  if (p.manifold.kind() == ManifoldKind::SPDCone) {
    // e_j is the diagonal unit matrix E_jj.
    const std::size_t k = p.manifold.dim();
    if (axis < 1 || axis > k) throw Error(Errc::InvalidArgument, "ray axis out of range");
    std::vector<double> d(c, 0.0);
    d[(axis - 1) * k + (axis - 1)] = 1.0;
    return d;
  }
  if (axis < 1 || axis > c) throw Error(Errc::InvalidArgument, "ray axis out of range");
  std::vector<double> d(c, 0.0);
  d[axis - 1] = 1.0;
  return d;
}

int cmd_simulate(const SimulateArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  const Preset p = preset(a.preset);
  const ManifoldSpec& spec = p.manifold;
  const bool mixture = std::holds_alternative<MixtureParams>(p.sampler.params());
  const bool euclidean = spec.kind() == ManifoldKind::Euclidean;
  const bool sphere = spec.kind() == ManifoldKind::Sphere;

  // Substreams: 0 sample, 1 scored points, 2 projection directions.
  const RngStream master(a.seed);
  RngStream sample_rng = master.substream(0);
  const LabeledSample s = sample_labeled(spec, p.sampler, sample_rng, a.n);
  const std::uint64_t direction_seed = master.substream(2).next_u64();
  BatchOptions batch;
  batch.threads = a.output.threads;

  TableMetadata meta{recorded_command(args), a.seed, GEODEPTH_VERSION, spec.to_string(), {{"preset", p.name}}};

  if (!a.ray.empty()) {
    const RaySpec ray(spec, p.reference, ray_direction(p, a.ray), parse_range(a.lambda, "--lambda"));
    ProfileOptions popts;
    popts.batch = batch;
    popts.directions = a.directions;
    popts.seed = direction_seed;
    const DepthProfile bd = depth_profile(s.data, ray, DepthMethod::DCOPS, popts);
    std::vector<std::string> cols = {"lambda", "distance", "depth"};
    std::optional<DepthProfile> pd1v, pd2v, atdv;
    if (euclidean) {
      pd1v = depth_profile(s.data, ray, DepthMethod::PD1, popts);
      pd2v = depth_profile(s.data, ray, DepthMethod::PD2, popts);
      cols.insert(cols.end(), {"bd_x2", "pd1", "pd2_x4"});
    }
    if (sphere) {
      atdv = depth_profile(s.data, ray, DepthMethod::ATD, popts);
      cols.push_back("atd");
    }
    const bool chi = p.sampler.is_standard_gaussian() && euclidean;
    if (chi) cols.push_back("chi_tail");
    Table table(cols);
    std::vector<SvgSeries> series{{"bd_x2", {}, {}, true, "#1f77b4"}};
    if (euclidean) {
      series.push_back({"pd1", {}, {}, true, "#2ca02c"});
      series.push_back({"pd2_x4", {}, {}, true, "#ff7f0e"});
    }
    if (chi) series.push_back({"chi_tail", {}, {}, true, "#7f7f7f"});
    for (std::size_t i = 0; i < bd.rows.size(); ++i) {
      const ProfileRow& r = bd.rows[i];
      std::vector<Cell> row{r.lambda, r.distance, r.depth};
      std::vector<double> ys{2.0 * r.depth};
      if (euclidean) {
        row.insert(row.end(), {2.0 * r.depth, pd1v->rows[i].depth, 4.0 * pd2v->rows[i].depth});
        ys.push_back(pd1v->rows[i].depth);
        ys.push_back(4.0 * pd2v->rows[i].depth);
      }
      if (sphere) row.emplace_back(atdv->rows[i].depth);
      if (chi) {
        const double tail = stats::chi_square_sf(r.distance * r.distance, static_cast<double>(spec.dim()));
        row.emplace_back(tail);
        ys.push_back(tail);
      }
      table.add_row(std::move(row));
      for (std::size_t j = 0; j < series.size(); ++j) {
        series[j].x.push_back(r.distance);
        series[j].y.push_back(ys[j]);
      }
    }
    meta.extra.emplace_back("monotonicity_violations", std::to_string(bd.monotonicity_violations));
    emit(table, meta, a.output, out, to_svg(series, p.name + " depth profile", "distance", "normalized depth"));
    return 0;
  }

  // Points to score: the sample itself, or fresh draws from the preset.
  std::optional<LabeledSample> fresh;
  if (a.score > 0) {
    RngStream score_rng = master.substream(1);
    fresh = sample_labeled(spec, p.sampler, score_rng, a.score);
  }
  const Dataset& scored = fresh ? fresh->data : s.data;
  const std::vector<std::size_t>& labels = fresh ? fresh->labels : s.labels;

  const DepthReport bd = a.pairs > 0 ? subsampled_depth_batch(s.data, scored, a.pairs, direction_seed, batch)
                                     : empirical_depth_batch(s.data, scored, batch);
  const std::string dist_col = "dist_to_" + p.reference_label;
  std::vector<std::string> cols = {"index"};
  if (mixture) cols.push_back("component");
  cols.insert(cols.end(), {dist_col, "depth"});
  std::optional<ProjectionOutlyingness> pd1m;
  std::optional<ProjectionCdfDepth> pd2m;
  const DirectionSet dirs = DirectionSet::random(spec.coord_count(), a.directions, direction_seed);
  if (euclidean) {
    pd1m.emplace(s.data, dirs);
    pd2m.emplace(s.data, dirs);
    cols.insert(cols.end(), {"bd_x2", "pd1", "pd2_x4"});
  }
  if (sphere) cols.push_back("atd");
  Table table(cols);
  for (std::size_t i = 0; i < scored.size(); ++i) {
    std::vector<Cell> row{static_cast<std::int64_t>(i)};
    if (mixture) row.emplace_back(static_cast<std::int64_t>(labels[i]));
    row.emplace_back(distance(spec, p.reference.coords(), scored.point(i)));
    row.emplace_back(bd.values[i]);
    if (euclidean) {
      row.insert(row.end(),
                 {2.0 * bd.values[i], pd1m->evaluate(scored.point(i)).value, 4.0 * pd2m->evaluate(scored.point(i))});
    }
    if (sphere) row.emplace_back(atd_sphere(s.data, scored.point(i), dirs));
    table.add_row(std::move(row));
  }
  meta.extra.emplace_back("n", std::to_string(a.n));
  meta.extra.emplace_back("skipped_pairs", std::to_string(bd.skipped_pairs));
  if (a.pairs > 0) meta.extra.emplace_back("pairs", std::to_string(a.pairs));
  std::vector<std::size_t> groups(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) groups[i] = labels[i] == p.majority_component ? 0 : 1;
  emit(table, meta, a.output, out,
       scatter_svg(table, dist_col, "depth", p.name, mixture ? &groups : nullptr));
  return 0;
}

// --- asym -------------------------------------------------------------------

struct AsymArgs {
  std::string type;
  std::string preset;
  std::string k = "1,2,5,10,50";
  std::string l = "-4:4:0.1";
  std::string x;
  std::string n;
  std::size_t reps = 500;
  std::size_t draws = 100'000;
  std::size_t ref_pairs = 1'000'000;
  std::size_t grid = 30;
  std::uint64_t seed = 0;
  OutputOptions output;
};

int cmd_asym(const AsymArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  TableMetadata meta{recorded_command(args), a.seed, GEODEPTH_VERSION, "", {{"type", a.type}}};
  const RngStream master(a.seed);

  if (a.type == "variance-curve") {
    const auto ks = parse_sizes(a.k, "--k");
    const auto ls = parse_range(a.l, "--l");
    const auto rows = variance_curve(ks, ls, a.draws, a.seed, a.output.threads);
    meta.manifold = "euclidean:k";
    Table table({"k", "l", "p2", "sigma2_marginal", "std_error"});
    std::vector<SvgSeries> series;
    static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};
    for (const auto& r : rows) {
      table.add_row({static_cast<std::int64_t>(r.k), r.l, r.sigma2.p2, r.sigma2.value, r.sigma2.std_error});
      if (series.empty() || series.back().name != "k=" + std::to_string(r.k)) {
        series.push_back({"k=" + std::to_string(r.k), {}, {}, true, colors[series.size() % 6]});
      }
      series.back().x.push_back(r.l);
      series.back().y.push_back(r.sigma2.value);
    }
    emit(table, meta, a.output, out, to_svg(series, "marginal variance", "l", "sigma2"));
    return 0;
  }

  const Preset p = preset(a.preset.empty() ? "gauss-k2" : a.preset);
  meta.manifold = p.manifold.to_string();
  meta.extra.emplace_back("preset", p.name);
  if (a.n.empty()) throw Error(Errc::InvalidArgument, "--n is required for --type " + a.type);
  const auto ns = parse_sizes(a.n, "--n");

  if (a.type == "clt") {
    const Point x = a.x.empty() ? p.reference : validate(p.manifold, parse_doubles(a.x, "--x"));
    CltOptions opts;
    opts.reference_pairs = a.ref_pairs;
    opts.zeta_outer = a.draws;
    opts.threads = a.output.threads;
    std::string xs;
    for (std::size_t i = 0; i < x.size(); ++i) xs += (i ? " " : "") + std::to_string(x[i]);
    meta.extra.emplace_back("x", xs);
    Table table({"n", "reps", "reference", "mean", "mean_std_error", "variance", "sigma2_proj",
                 "sigma2_proj_std_error", "sigma2_marginal", "ks_distance"});
    std::vector<double> nn, vv;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const CLTReport r = clt_experiment(p.manifold, p.sampler, x, ns[i], a.reps, master.substream(i).next_u64(), opts);
      table.add_row({static_cast<std::int64_t>(r.n), static_cast<std::int64_t>(r.reps), r.reference, r.mean,
                     r.mean_std_error, r.variance, r.sigma2_proj, r.sigma2_proj_std_error, r.sigma2_marginal,
                     r.ks_distance});
      nn.push_back(static_cast<double>(r.n));
      vv.push_back(r.variance);
    }
    emit(table, meta, a.output, out, to_svg({SvgSeries{"variance", nn, vv, true}}, "CLT", "n", "Var(sqrt(n) dev)"));
    return 0;
  }

  if (a.type == "gc") {
    GcOptions opts;
    opts.reference_pairs = a.ref_pairs;
    opts.threads = a.output.threads;
    const auto grid = default_grid(p, a.grid, master.substream(0).next_u64());
    const ConsistencyReport r = gc_experiment(p.manifold, p.sampler, grid, ns, master.substream(1).next_u64(), opts);
    meta.extra.emplace_back("grid_points", std::to_string(grid.size()));
    meta.extra.emplace_back("reference_pairs", std::to_string(a.ref_pairs));
    Table table({"n", "sup_error"});
    std::vector<double> nn;
    for (std::size_t i = 0; i < r.n_values.size(); ++i) {
      table.add_row({static_cast<std::int64_t>(r.n_values[i]), r.sup_errors[i]});
      nn.push_back(static_cast<double>(r.n_values[i]));
    }
    emit(table, meta, a.output, out, to_svg({SvgSeries{"sup_error", nn, r.sup_errors, true}}, "uniform consistency",
                                            "n", "sup error"));
    return 0;
  }
  throw Error(Errc::InvalidArgument, "unknown --type '" + a.type + "'");
}

}  // namespace

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::CutLocus:
    case Errc::DegenerateSample:
    case Errc::ZeroMAD:
    case Errc::NoValidPole:
    case Errc::CoincidentPoints:
      return 3;
    case Errc::SamplerFailure:
    case Errc::RejectionStall:
      return 4;
    default:
      return 2;
  }
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw Error(Errc::InvalidArgument, "--config needs a file");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
      continue;
    }
    std::ifstream probe(path);
    if (!probe) throw Error(Errc::InvalidArgument, "cannot open config file '" + path + "'");
    for (const CLI::ConfigItem& item : CLI::ConfigTOML().from_config(probe)) {
      if (item.name == "++" || item.name == "--") continue;
      if (item.inputs.size() == 1 && item.inputs.front() == "true") {
        out.push_back("--" + item.name);
      } else if (item.inputs.size() == 1 && item.inputs.front() == "false") {
        continue;
      } else {
        out.push_back("--" + item.name);
        std::string joined;
        for (std::size_t j = 0; j < item.inputs.size(); ++j) joined += (j ? "," : "") + item.inputs[j];
        out.push_back(joined);
      }
    }
  }
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }

  CLI::App app{"Spherical (DCOPS) depth on Riemannian manifolds", "geodepth"};
  app.set_version_flag("--version", std::string(GEODEPTH_VERSION));
  app.require_subcommand(1);

  DepthArgs depth;
  auto* d = app.add_subcommand("depth", "Depth of query points with respect to a dataset");
  d->add_option("--manifold", depth.manifold, "euclidean:K, hilbert:K, sphere:K, torus:D or spd:K")->required();
  d->add_option("--in", depth.input, "Headerless CSV sample, one point per row")->required();
  auto* qfile = d->add_option("--queries", depth.queries, "Headerless CSV of query points");
  auto* qself = d->add_flag("--query-self", depth.query_self, "Score the sample points themselves");
  qfile->excludes(qself);
  d->add_option("--method", depth.method)->check(CLI::IsMember({"dcops", "pd1", "pd2", "atd"}));
  d->add_option("--seed", depth.seed, "Seed for directions, poles and pair subsampling");
  d->add_option("--directions", depth.directions, "Random directions (pd1, pd2) or poles (atd)");
  d->add_option("--pairs", depth.pairs, "Score dcops with this many random pairs instead of all");
  add_output_options(d, depth.output);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Sample a preset design and score it");
  s->add_option("--preset", sim.preset)->required();
  s->add_option("--n", sim.n, "Sample size")->required()->check(CLI::PositiveNumber);
  s->add_option("--seed", sim.seed);
  s->add_option("--score", sim.score, "Score this many fresh draws instead of the sample");
  s->add_option("--pairs", sim.pairs, "Score dcops with this many random pairs instead of all");
  s->add_option("--directions", sim.directions);
  s->add_option("--profile-ray", sim.ray, "Depth profile from the reference point along e<j>");
  s->add_option("--lambda", sim.lambda, "Profile grid start:stop:step");
  add_output_options(s, sim.output);

  AsymArgs asym;
  auto* as = app.add_subcommand("asym", "Large-sample experiments");
  as->add_option("--type", asym.type)->required()->check(CLI::IsMember({"clt", "gc", "variance-curve"}));
  as->add_option("--preset", asym.preset);
  as->add_option("--k", asym.k, "Dimensions for the variance curve");
  as->add_option("--l", asym.l, "Positions l for x = l e1, start:stop:step");
  as->add_option("--x", asym.x, "CLT query point, comma separated");
  as->add_option("--n", asym.n, "Sample size(s), comma separated");
  as->add_option("--reps", asym.reps);
  as->add_option("--draws", asym.draws, "Monte-Carlo draws for P2 and zeta1");
  as->add_option("--ref-pairs", asym.ref_pairs, "Pairs for the population reference");
  as->add_option("--grid", asym.grid, "Grid size for --type gc");
  as->add_option("--seed", asym.seed);
  add_output_options(as, asym.output);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (d->parsed()) {
      if (!depth.query_self && depth.queries.empty()) {
        err << "error: depth needs --queries FILE or --query-self\n";
        return 1;
      }
      return cmd_depth(depth, args, out);
    }
    if (s->parsed()) return cmd_simulate(sim, args, out);
    return cmd_asym(asym, args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace geodepth::cli
