#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli/commands.hpp"
#include "geodepth/baselines.hpp"
#include "geodepth/depth.hpp"
#include "geodepth/error.hpp"
#include "geodepth/samplers.hpp"

namespace py = pybind11;
using namespace geodepth;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Rows of an (n, coord_count) array; a 1-d array is one row.
Dataset to_dataset(const ManifoldSpec& spec, const Array& a) {
  const auto info = a.request();
  const std::size_t width = spec.coord_count();
  if (info.ndim == 1 ? static_cast<std::size_t>(info.shape[0]) != width
                     : info.ndim != 2 || static_cast<std::size_t>(info.shape[1]) != width) {
    throw Error(Errc::WrongDimension, "expected rows of " + std::to_string(width) + " coordinates for " +
                                          spec.to_string());
  }
  return Dataset(spec, std::span<const double>(a.data(), static_cast<std::size_t>(a.size())));
}

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::array_t<double> to_array(const Dataset& ds) {
  py::array_t<double> out({ds.size(), ds.stride()});
  std::copy(ds.flat().begin(), ds.flat().end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spherical (DCOPS) depth on Euclidean space, spheres, tori and the SPD cone";
  m.attr("__version__") = GEODEPTH_VERSION;

  static py::handle error_type = py::exception<Error>(m, "GeodepthError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = py::reinterpret_borrow<py::object>(error_type)(e.what());
      err.attr("kind") = to_string(e.code());
      PyErr_SetObject(error_type.ptr(), err.ptr());
    }
  });

  m.def(
      "depth",
      [](const std::string& manifold, const Array& data, std::optional<Array> queries, unsigned threads) {
        const ManifoldSpec spec = ManifoldSpec::parse(manifold);
        const Dataset ds = to_dataset(spec, data);
        BatchOptions opts;
        opts.threads = threads;
        py::gil_scoped_release release;
        const DepthReport r =
            queries ? empirical_depth_batch(ds, to_dataset(spec, *queries), opts) : empirical_depth_self(ds, opts);
        py::gil_scoped_acquire acquire;
        return py::make_tuple(to_array(r.values), r.skipped_pairs);
      },
      py::arg("manifold"), py::arg("data"), py::arg("queries") = py::none(), py::arg("threads") = 0,
      "Empirical DCOPS depth at each query row (sample rows when omitted). Returns (values, skipped_pairs).");

  m.def(
      "depth_subsampled",
      [](const std::string& manifold, const Array& data, const Array& queries, std::size_t pairs, std::uint64_t seed) {
        const ManifoldSpec spec = ManifoldSpec::parse(manifold);
        return to_array(subsampled_depth_batch(to_dataset(spec, data), to_dataset(spec, queries), pairs, seed).values);
      },
      py::arg("manifold"), py::arg("data"), py::arg("queries"), py::arg("pairs"), py::arg("seed") = 0);

  m.def(
      "population_depth",
      [](const std::string& preset_name, const Array& queries, std::size_t pairs, std::uint64_t seed) {
        const Preset p = preset(preset_name);
        const Dataset q = to_dataset(p.manifold, queries);
        std::vector<Point> pts;
        for (std::size_t i = 0; i < q.size(); ++i) pts.push_back(q.point_copy(i));
        const auto est = population_depth_mc_batch(p.manifold, p.sampler, pts, pairs, seed);
        std::vector<double> v, se;
        for (const auto& e : est) v.push_back(e.estimate), se.push_back(e.std_error);
        return py::make_tuple(to_array(v), to_array(se));
      },
      py::arg("preset"), py::arg("queries"), py::arg("pairs") = 100000, py::arg("seed") = 0,
      "Monte Carlo population depth under a preset distribution. Returns (estimates, std_errors).");

  m.def(
      "deepest_point",
      [](const std::string& manifold, const Array& data) {
        const DeepestPoint d = deepest_point(to_dataset(ManifoldSpec::parse(manifold), data));
        return py::make_tuple(d.index, d.value);
      },
      py::arg("manifold"), py::arg("data"));

  m.def(
      "sample",
      [](const std::string& preset_name, std::size_t n, std::uint64_t seed) {
        const Preset p = preset(preset_name);
        RngStream rng(seed);
        const LabeledSample s = sample_labeled(p.manifold, p.sampler, rng, n);
        return py::make_tuple(to_array(s.data), s.labels);
      },
      py::arg("preset"), py::arg("n"), py::arg("seed") = 0, "Draws (points, component_labels) from a named preset.");

  m.def("preset_names", &preset_names);
  m.def(
      "preset_manifold", [](const std::string& name) { return preset(name).manifold.to_string(); }, py::arg("preset"));

  m.def(
      "distance",
      [](const std::string& manifold, const Array& p, const Array& q) {
        const ManifoldSpec spec = ManifoldSpec::parse(manifold);
        return distance(spec, to_dataset(spec, p).point(0), to_dataset(spec, q).point(0));
      },
      py::arg("manifold"), py::arg("p"), py::arg("q"));

  m.def(
      "midpoint",
      [](const std::string& manifold, const Array& p, const Array& q) {
        const ManifoldSpec spec = ManifoldSpec::parse(manifold);
        return to_array(
            midpoint(spec, to_dataset(spec, p).point_copy(0), to_dataset(spec, q).point_copy(0)).vector());
      },
      py::arg("manifold"), py::arg("p"), py::arg("q"));

  m.def(
      "projection_depth",
      [](const Array& data, const Array& queries, const std::string& kind, std::size_t directions, std::uint64_t seed) {
        const auto info = data.request();
        if (info.ndim != 2) throw Error(Errc::WrongDimension, "data must be a 2-d array");
        const ManifoldSpec spec = ManifoldSpec::euclidean(static_cast<std::size_t>(info.shape[1]));
        const Dataset ds = to_dataset(spec, data);
        const Dataset q = to_dataset(spec, queries);
        const DirectionSet dirs = DirectionSet::random(spec.dim(), directions, seed);
        std::vector<double> out;
        if (kind == "pd1") {
          const ProjectionOutlyingness o(ds, dirs);
          for (std::size_t i = 0; i < q.size(); ++i) out.push_back(o.evaluate(q.point(i)).value);
        } else if (kind == "pd2") {
          const ProjectionCdfDepth c(ds, dirs);
          for (std::size_t i = 0; i < q.size(); ++i) out.push_back(c.evaluate(q.point(i)));
        } else {
          throw Error(Errc::InvalidArgument, "kind must be 'pd1' or 'pd2'");
        }
        return to_array(out);
      },
      py::arg("data"), py::arg("queries"), py::arg("kind") = "pd1", py::arg("directions") = 500,
      py::arg("seed") = 0);

  m.def(
      "angular_tukey_depth",
      [](const Array& data, const Array& queries, std::size_t directions, std::uint64_t seed) {
        const auto info = data.request();
        if (info.ndim != 2) throw Error(Errc::WrongDimension, "data must be a 2-d array");
        const ManifoldSpec spec = ManifoldSpec::sphere(static_cast<std::size_t>(info.shape[1]));
        const Dataset ds = to_dataset(spec, data);
        const Dataset q = to_dataset(spec, queries);
        const DirectionSet poles = DirectionSet::random(spec.dim(), directions, seed);
        std::vector<double> out;
        for (std::size_t i = 0; i < q.size(); ++i) out.push_back(atd_sphere(ds, q.point(i), poles));
        return to_array(out);
      },
      py::arg("data"), py::arg("queries"), py::arg("directions") = 500, py::arg("seed") = 0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line in-process. Returns (exit_code, stdout, stderr).");
}
