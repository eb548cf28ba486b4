#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <vector>

#include "mosum/baseline.hpp"
#include "mosum/bench.hpp"
#include "mosum/io.hpp"
#include "mosum/mosum.hpp"
#include "mosum/path.hpp"
#include "mosum/sdll.hpp"
#include "mosum/signal.hpp"

namespace py = pybind11;
using namespace mosum;

namespace {

using Values = std::vector<double>;

BandwidthGrid grid_for(std::size_t length, std::optional<std::vector<std::size_t>> bandwidths,
                       bool include_unit, std::size_t cap_divisor) {
  if (bandwidths) {
    BandwidthGrid grid{*bandwidths};
    grid.validate(length);
    return grid;
  }
  return build_grid(length, include_unit, cap_divisor);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multiscale MOSUM solution paths with steepest-drop model selection";

  py::class_<PiecewiseSignal>(m, "PiecewiseSignal")
      .def(py::init<std::size_t, std::vector<std::size_t>, std::vector<double>>(), py::arg("length"),
           py::arg("changepoints"), py::arg("levels"))
      .def_property_readonly("length", &PiecewiseSignal::length)
      .def_property_readonly("changepoints", &PiecewiseSignal::changepoints)
      .def_property_readonly("levels", &PiecewiseSignal::levels)
      .def("jump_sizes", &PiecewiseSignal::jump_sizes)
      .def("spacings", &PiecewiseSignal::spacings)
      .def("min_spacing", &PiecewiseSignal::min_spacing)
      .def("mean_function", &PiecewiseSignal::mean_function)
      .def("to_json", [](const PiecewiseSignal& s) { return signal_to_json(s); })
      .def_static("from_json", [](const std::string& text) { return signal_from_json(text); })
      .def(py::self == py::self)
      .def("__repr__", [](const PiecewiseSignal& s) {
        return "PiecewiseSignal(length=" + std::to_string(s.length()) +
               ", changepoints=" + std::to_string(s.num_changepoints()) + ")";
      });

  py::class_<NoiseSpec>(m, "NoiseSpec")
      .def(py::init([](double sigma, std::uint64_t seed) { return NoiseSpec{sigma, NoiseKind::gaussian, seed}; }),
           py::arg("sigma") = 1.0, py::arg("seed") = 0)
      .def_readwrite("sigma", &NoiseSpec::sigma)
      .def_readwrite("seed", &NoiseSpec::seed);

  py::class_<Preset>(m, "Preset")
      .def_readonly("name", &Preset::name)
      .def_readonly("description", &Preset::description)
      .def_readonly("signal", &Preset::signal)
      .def_readonly("noise", &Preset::noise);

  py::class_<Detectability>(m, "Detectability")
      .def_readonly("index", &Detectability::index)
      .def_readonly("threshold", &Detectability::threshold)
      .def_readonly("detectable", &Detectability::detectable);

  m.def("make_teeth", &make_teeth, py::arg("length"), py::arg("period"), py::arg("low"), py::arg("high"));
  m.def("preset", [](const std::string& name) { return preset(name); }, py::arg("name"));
  m.def("preset_names", &preset_names);
  m.def(
      "sample_series",
      [](const PiecewiseSignal& signal, const NoiseSpec& noise, std::uint64_t replication) {
        return sample_series(signal, noise, replication).values;
      },
      py::arg("signal"), py::arg("noise"), py::arg("replication") = 0);
  m.def(
      "detectability_index",
      [](const PiecewiseSignal& signal, double sigma) { return detectability_index(signal, sigma); },
      py::arg("signal"), py::arg("sigma"));

  py::class_<Scale>(m, "Scale")
      .def_readonly("left", &Scale::left)
      .def_readonly("right", &Scale::right)
      .def("__iter__", [](const Scale& s) { return py::iter(py::make_tuple(s.left, s.right)); })
      .def(py::self == py::self);

  py::class_<BandwidthGrid>(m, "BandwidthGrid")
      .def(py::init([](std::vector<std::size_t> b) { return BandwidthGrid{std::move(b)}; }),
           py::arg("bandwidths"))
      .def_readonly("bandwidths", &BandwidthGrid::bandwidths)
      .def("pairs", &BandwidthGrid::pairs)
      .def("largest", &BandwidthGrid::largest);

  m.def("build_grid", py::overload_cast<std::size_t, bool, std::size_t>(&build_grid), py::arg("length"),
        py::arg("include_unit") = true, py::arg("cap_divisor") = 3);
  m.def("prefix_sums", [](const Values& x) { return prefix_sums(x); }, py::arg("values"));
  m.def(
      "mosum_stat", [](const Values& x, std::size_t left, std::size_t right) { return mosum_stat(x, left, right); },
      py::arg("values"), py::arg("left"), py::arg("right"));
  m.def(
      "local_maximizers",
      [](const Values& field, std::size_t left, std::size_t right) { return local_maximizers(field, left, right); },
      py::arg("field"), py::arg("left"), py::arg("right"));
  m.def(
      "mask",
      [](const Values& field, const std::vector<std::size_t>& maxima, std::size_t left, std::size_t right) {
        return mask(field, maxima, left, right);
      },
      py::arg("field"), py::arg("maximizers"), py::arg("left"), py::arg("right"));

  py::class_<ScaleField>(m, "ScaleField")
      .def_readonly("scale", &ScaleField::scale)
      .def_readonly("raw", &ScaleField::raw)
      .def_readonly("maximizers", &ScaleField::maximizers)
      .def_readonly("masked", &ScaleField::masked);

  m.def("compute_fields", [](const Values& x, const BandwidthGrid& grid) { return compute_fields(x, grid); },
        py::arg("values"), py::arg("grid"));
  m.def("aggregate", [](const std::vector<ScaleField>& fields) { return aggregate(fields); }, py::arg("fields"));

  py::class_<PathEntry>(m, "PathEntry")
      .def_readonly("location", &PathEntry::location)
      .def_readonly("importance", &PathEntry::importance)
      .def_readonly("scale", &PathEntry::scale)
      .def_readonly("iteration", &PathEntry::iteration)
      .def("__repr__", [](const PathEntry& e) {
        return "PathEntry(location=" + std::to_string(e.location) + ", importance=" + std::to_string(e.importance) +
               ", scale=(" + std::to_string(e.scale.left) + ", " + std::to_string(e.scale.right) + "))";
      });

  py::class_<SolutionPath>(m, "SolutionPath")
      .def_readonly("entries", &SolutionPath::entries)
      .def_readonly("iterations", &SolutionPath::iterations)
      .def("__len__", [](const SolutionPath& p) { return p.entries.size(); })
      .def("to_json", [](const SolutionPath& p) { return path_to_json(p); });

  m.def(
      "generate_path",
      [](std::vector<ScaleField> fields, bool aggregate_importance) {
        auto total = aggregate(fields);
        return generate_path(std::move(fields), std::move(total), PathOptions{aggregate_importance});
      },
      py::arg("fields"), py::arg("aggregate_importance") = false);
  m.def(
      "solution_path",
      [](const Values& x, std::optional<std::vector<std::size_t>> bandwidths, bool include_unit,
         std::size_t cap_divisor, bool aggregate_importance) {
        return solution_path(x, grid_for(x.size(), std::move(bandwidths), include_unit, cap_divisor),
                             PathOptions{aggregate_importance});
      },
      py::arg("values"), py::arg("bandwidths") = py::none(), py::arg("include_unit") = true,
      py::arg("cap_divisor") = 3, py::arg("aggregate_importance") = false);

  py::class_<Segmentation>(m, "Segmentation")
      .def_readonly("n_hat", &Segmentation::n_hat)
      .def_readonly("changepoints", &Segmentation::changepoints)
      .def_readonly("fitted", &Segmentation::fitted)
      .def_readonly("sigma_hat", &Segmentation::sigma_hat)
      .def_readonly("threshold", &Segmentation::threshold);

  py::class_<SdllSelection>(m, "SdllSelection")
      .def_readonly("n_hat", &SdllSelection::n_hat)
      .def_readonly("changepoints", &SdllSelection::changepoints);

  py::class_<MosumSdllResult>(m, "MosumSdllResult")
      .def_readonly("segmentation", &MosumSdllResult::segmentation)
      .def_readonly("path", &MosumSdllResult::path);

  m.def("mad_sigma", [](const Values& x) { return mad_sigma(x); }, py::arg("values"));
  m.def("sdll_threshold", &sdll_threshold, py::arg("lambda_"), py::arg("sigma_hat"), py::arg("length"));
  m.def("sdll_select", &sdll_select, py::arg("path"), py::arg("threshold"), py::arg("noise_floor") = 0.0,
        py::arg("dominant_ratio") = 2.0);
  m.def(
      "fit_means",
      [](const Values& x, const std::vector<std::size_t>& cps) { return fit_means(x, cps); },
      py::arg("values"), py::arg("changepoints"));
  m.def(
      "detect_mosum_sdll",
      [](const Values& x, double lambda, bool include_unit, std::size_t cap_divisor, bool aggregate_importance,
         double dominant_ratio) {
        SdllConfig config;
        config.lambda = lambda;
        config.aggregate_importance = aggregate_importance;
        config.dominant_ratio = dominant_ratio;
        return detect_mosum_sdll(x, GridConfig{include_unit, cap_divisor}, config);
      },
      py::arg("values"), py::arg("lambda_") = 0.9, py::arg("include_unit") = true, py::arg("cap_divisor") = 3,
      py::arg("aggregate_importance") = false, py::arg("dominant_ratio") = 2.0);

  py::class_<CalibratedThreshold>(m, "CalibratedThreshold")
      .def_readonly("length", &CalibratedThreshold::length)
      .def_readonly("bandwidth", &CalibratedThreshold::bandwidth)
      .def_readonly("alpha", &CalibratedThreshold::alpha)
      .def_readonly("reps", &CalibratedThreshold::reps)
      .def_readonly("seed", &CalibratedThreshold::seed)
      .def_readonly("critical_value", &CalibratedThreshold::critical_value);

  py::class_<BaselineResult>(m, "BaselineResult")
      .def_readonly("segmentation", &BaselineResult::segmentation)
      .def_readonly("thresholds", &BaselineResult::thresholds);

  m.def("calibrate_threshold", &calibrate_threshold, py::arg("length"), py::arg("bandwidth"), py::arg("alpha"),
        py::arg("reps") = 1000, py::arg("seed") = 20190527);
  m.def(
      "detect_baseline",
      [](const Values& x, double alpha, std::size_t min_bandwidth, double merge_tolerance,
         std::size_t calibration_reps, std::uint64_t calibration_seed,
         std::optional<std::vector<std::size_t>> bandwidths) {
        BaselineConfig config;
        config.alpha = alpha;
        config.min_bandwidth = min_bandwidth;
        config.merge_tolerance = merge_tolerance;
        config.calibration_reps = calibration_reps;
        config.calibration_seed = calibration_seed;
        return detect_baseline(x, config, grid_for(x.size(), std::move(bandwidths), false, 3));
      },
      py::arg("values"), py::arg("alpha") = 0.9, py::arg("min_bandwidth") = 2, py::arg("merge_tolerance") = 0.4,
      py::arg("calibration_reps") = 1000, py::arg("calibration_seed") = 20190527,
      py::arg("bandwidths") = py::none());

  m.def(
      "run_benchmark",
      [](std::vector<std::string> models, std::vector<std::string> methods, std::size_t reps, std::uint64_t seed,
         unsigned threads, std::size_t calibration_reps) {
        BenchConfig config;
        config.models = std::move(models);
        config.methods.clear();
        for (const auto& name : methods) config.methods.push_back(parse_method(name));
        config.reps = reps;
        config.seed = seed;
        config.threads = threads;
        config.baseline.calibration_reps = calibration_reps;
        const auto report = run_benchmark(config);
        return py::module_::import("json").attr("loads")(report_to_json(report));
      },
      py::arg("models") = std::vector<std::string>{"et", "eet"},
      py::arg("methods") = std::vector<std::string>{"mosum-sdll", "mosum-baseline"}, py::arg("reps") = 100,
      py::arg("seed") = 7, py::arg("threads") = 1, py::arg("calibration_reps") = 1000,
      "Run the Monte-Carlo benchmark and return the report as a dict.");
}
