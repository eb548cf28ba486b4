#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mosum/baseline.hpp"
#include "mosum/bench.hpp"
#include "mosum/io.hpp"
#include "mosum/mosum.hpp"
#include "mosum/path.hpp"
#include "mosum/sdll.hpp"
#include "mosum/signal.hpp"

namespace {

struct GridFlags {
  bool no_unit = false;
  std::size_t cap_divisor = 3;

  mosum::GridConfig config() const { return {!no_unit, cap_divisor}; }
};

void add_grid_flags(CLI::App* cmd, GridFlags& flags) {
  cmd->add_flag("--no-unit-bandwidth", flags.no_unit, "Drop bandwidth 1 from the grid");
  cmd->add_option("--cap-divisor", flags.cap_divisor, "Largest bandwidth is floor(T / divisor)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
}

void add_baseline_flags(CLI::App* cmd, mosum::BaselineConfig& config, std::string& cache) {
  cmd->add_option("--alpha", config.alpha, "Baseline significance level")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--min-bandwidth", config.min_bandwidth, "Smallest baseline bandwidth");
  cmd->add_option("--merge-tolerance", config.merge_tolerance, "Merge radius as a fraction of G");
  cmd->add_option("--calibration-reps", config.calibration_reps, "Null simulations per bandwidth");
  cmd->add_option("--calibration-seed", config.calibration_seed, "Seed for null simulations");
  cmd->add_option("--threshold-cache", cache, "CSV file caching calibrated thresholds");
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text << (text.empty() || text.back() != '\n' ? "\n" : "");
  else
    mosum::write_text_file(out, text);
}

void dump_fields(const std::string& file, const mosum::TimeSeries& series,
                 const mosum::GridConfig& grid) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file);
  const auto fields = mosum::compute_fields(series.values, mosum::build_grid(series.size(), grid));
  mosum::write_fields_csv(out, fields);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiscale MOSUM candidate generation with SDLL model selection"};
  app.require_subcommand(1);

  // preset
  std::string preset_model = "et";
  std::string preset_out;
  auto* preset_cmd = app.add_subcommand("preset", "Describe a built-in signal model");
  preset_cmd->add_option("--model", preset_model, "et, eet or mix");
  preset_cmd->add_option("--out", preset_out, "Write the signal JSON here");

  // simulate
  std::string sim_model = "et";
  double sim_sigma = -1.0;
  std::uint64_t sim_seed = 7;
  std::uint64_t sim_rep = 0;
  std::string sim_out;
  auto* sim_cmd = app.add_subcommand("simulate", "Sample one noisy series from a model");
  sim_cmd->add_option("--model", sim_model, "et, eet or mix");
  sim_cmd->add_option("--sigma", sim_sigma, "Noise standard deviation (default: preset value)");
  sim_cmd->add_option("--seed", sim_seed, "Master seed");
  sim_cmd->add_option("--rep", sim_rep, "Replication index");
  sim_cmd->add_option("--out", sim_out, "Output CSV (default stdout)");

  // detect
  std::string det_input, det_out, det_method = "mosum-sdll", det_fields, det_cache;
  mosum::SdllConfig det_sdll;
  mosum::BaselineConfig det_baseline;
  GridFlags det_grid;
  auto* det_cmd = app.add_subcommand("detect", "Estimate change points in a series");
  det_cmd->add_option("--input", det_input, "Input CSV, one value per line")->required();
  det_cmd->add_option("--method", det_method, "mosum-sdll or mosum-baseline");
  det_cmd->add_option("--lambda", det_sdll.lambda, "SDLL threshold multiplier");
  det_cmd->add_option("--dominant-ratio", det_sdll.dominant_ratio,
                      "Drop factor admissible above the SDLL threshold");
  det_cmd->add_flag("--aggregate-importance", det_sdll.aggregate_importance,
                    "Use |V(k)| as path importance");
  det_cmd->add_option("--dump-fields", det_fields, "Write per-scale statistic fields as CSV");
  det_cmd->add_option("--out", det_out, "Output JSON (default stdout)");
  add_grid_flags(det_cmd, det_grid);
  add_baseline_flags(det_cmd, det_baseline, det_cache);

  // path
  std::string path_input, path_out, path_fields;
  GridFlags path_grid;
  bool path_aggregate = false;
  auto* path_cmd = app.add_subcommand("path", "Emit the MOSUM solution path");
  path_cmd->add_option("--input", path_input, "Input CSV, one value per line")->required();
  path_cmd->add_option("--out", path_out, "Output JSON (default stdout)");
  path_cmd->add_option("--dump-fields", path_fields, "Write per-scale statistic fields as CSV");
  path_cmd->add_flag("--aggregate-importance", path_aggregate, "Use |V(k)| as path importance");
  add_grid_flags(path_cmd, path_grid);

  // bench
  std::string bench_models = "et,eet", bench_methods = "mosum-sdll,mosum-baseline", bench_out,
              bench_cache;
  mosum::BenchConfig bench;
  GridFlags bench_grid;
  auto* bench_cmd = app.add_subcommand("bench", "Monte-Carlo benchmark over preset models");
  bench_cmd->add_option("--models", bench_models, "Comma-separated presets");
  bench_cmd->add_option("--methods", bench_methods, "Comma-separated methods");
  bench_cmd->add_option("--reps", bench.reps, "Replications per model")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "Master seed");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads");
  bench_cmd->add_option("--lambda", bench.sdll.lambda, "SDLL threshold multiplier");
  bench_cmd->add_option("--dominant-ratio", bench.sdll.dominant_ratio,
                        "Drop factor admissible above the SDLL threshold");
  bench_cmd->add_option("--out", bench_out, "Report file (.json or .csv; default CSV on stdout)");
  add_grid_flags(bench_cmd, bench_grid);
  add_baseline_flags(bench_cmd, bench.baseline, bench_cache);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*preset_cmd) {
      const auto p = mosum::preset(preset_model);
      const auto d = mosum::detectability_index(p.signal, p.noise.sigma);
      std::cerr << p.description << "\nN=" << p.signal.num_changepoints()
                << " min spacing=" << p.signal.min_spacing() << " detectability=" << d.index
                << " log T=" << d.threshold << '\n';
      emit(preset_out, mosum::signal_to_json(p.signal));
    } else if (*sim_cmd) {
      auto p = mosum::preset(sim_model);
      p.noise.seed = sim_seed;
      if (sim_sigma >= 0.0) p.noise.sigma = sim_sigma;
      std::cerr << p.description << " (sigma used: " << p.noise.sigma << ", seed " << sim_seed
                << ", rep " << sim_rep << ")\n";
      std::ostringstream text;
      mosum::write_series_csv(text, mosum::sample_series(p.signal, p.noise, sim_rep));
      emit(sim_out, text.str());
    } else if (*det_cmd) {
      const auto series = mosum::read_series_csv(det_input);
      if (!det_fields.empty()) dump_fields(det_fields, series, det_grid.config());
      const auto method = mosum::parse_method(det_method);
      if (method == mosum::Method::mosum_sdll) {
        const auto result = mosum::detect_mosum_sdll(series.values, det_grid.config(), det_sdll);
        emit(det_out, mosum::detection_to_json(result, det_sdll));
      } else {
        mosum::ThresholdCache cache = det_cache.empty() ? mosum::ThresholdCache()
                                                        : mosum::ThresholdCache(det_cache);
        const auto grid = mosum::build_grid(series.size(), det_grid.config());
        const auto result = mosum::detect_baseline(series.values, det_baseline, grid, cache);
        emit(det_out, mosum::detection_to_json(result, det_baseline));
      }
    } else if (*path_cmd) {
      const auto series = mosum::read_series_csv(path_input);
      if (!path_fields.empty()) dump_fields(path_fields, series, path_grid.config());
      const auto path = mosum::solution_path(
          series.values, mosum::build_grid(series.size(), path_grid.config()), {path_aggregate});
      emit(path_out, mosum::path_to_json(path));
    } else if (*bench_cmd) {
      bench.models = split_list(bench_models);
      bench.methods.clear();
      for (const auto& m : split_list(bench_methods)) bench.methods.push_back(mosum::parse_method(m));
      bench.grid = bench_grid.config();
      if (!bench_cache.empty()) bench.threshold_cache = bench_cache;
      const auto report = mosum::run_benchmark(bench);
      if (bench_out.empty())
        std::cout << mosum::report_to_csv(report);
      else
        mosum::emit_report(report, bench_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
