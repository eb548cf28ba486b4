#include "mosum/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "mosum/io.hpp"
#include "mosum/signal.hpp"

namespace mosum {

using nlohmann::json;

std::string_view method_name(Method method) {
  switch (method) {
    case Method::mosum_sdll:
      return "mosum-sdll";
    case Method::mosum_baseline:
      return "mosum-baseline";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "mosum-sdll") return Method::mosum_sdll;
  if (name == "mosum-baseline") return Method::mosum_baseline;
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected mosum-sdll or mosum-baseline)");
}

void BenchConfig::validate() const {
  if (models.empty()) throw std::invalid_argument("benchmark needs at least one model");
  if (methods.empty()) throw std::invalid_argument("benchmark needs at least one method");
  if (reps == 0) throw std::invalid_argument("benchmark needs at least one replication");
  for (const auto& m : models) (void)preset(m);
  if (!(sdll.lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(sdll.dominant_ratio > 1.0)) throw std::invalid_argument("dominant ratio must exceed 1");
  baseline.validate();
}

namespace {

using Clock = std::chrono::steady_clock;

struct ModelRun {
  Preset preset;
  BandwidthGrid grid;
  std::vector<double> truth;
};

ReplicationRecord run_one(const ModelRun& run, Method method, std::size_t replication,
                          const BenchConfig& config, ThresholdCache& cache) {
  const auto series = sample_series(run.preset.signal, run.preset.noise, replication);
  Segmentation seg;
  const auto start = Clock::now();
  if (method == Method::mosum_sdll)
    seg = detect_mosum_sdll(series.values, config.grid, config.sdll).segmentation;
  else
    seg = detect_baseline(series.values, config.baseline, run.grid, cache).segmentation;
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();

  double sq = 0.0;
  for (std::size_t t = 0; t < run.truth.size(); ++t) {
    const double d = seg.fitted[t] - run.truth[t];
    sq += d * d;
  }
  const auto truth_n = static_cast<std::int64_t>(run.preset.signal.num_changepoints());
  return {run.preset.name, method, replication, seg.n_hat,
          static_cast<std::int64_t>(seg.n_hat) - truth_n, sq / static_cast<double>(run.truth.size()),
          seconds};
}

}  // namespace

MethodSummary summarize(std::string model, Method method,
                        const std::vector<ReplicationRecord>& records) {
  MethodSummary s{std::move(model), method, 0.0, 0.0, 0.0, 0.0, 0.0};
  std::size_t count = 0;
  for (const auto& r : records) {
    if (r.model != s.model || r.method != method) continue;
    const double e = static_cast<double>(r.error);
    s.mean_error += e;
    s.mean_abs_error += std::abs(e);
    s.mean_sq_error += e * e;
    s.mean_fit_mse += r.fit_mse;
    s.mean_seconds += r.seconds;
    ++count;
  }
  if (count == 0) throw std::invalid_argument("no records for " + s.model);
  const double n = static_cast<double>(count);
  s.mean_error /= n;
  s.mean_abs_error /= n;
  s.mean_sq_error /= n;
  s.mean_fit_mse /= n;
  s.mean_seconds /= n;
  return s;
}

BenchReport run_benchmark(const BenchConfig& config) {
  config.validate();
  ThresholdCache cache = config.threshold_cache ? ThresholdCache(*config.threshold_cache)
                                                : ThresholdCache();
  BenchReport report;
  report.config = config;

  for (const auto& model : config.models) {
    ModelRun run{preset(model), {}, {}};
    run.preset.noise.seed = config.seed;
    run.grid = build_grid(run.preset.signal.length(), config.grid);
    run.truth = run.preset.signal.mean_function();
    const auto& signal = run.preset.signal;
    report.models.push_back({run.preset.name, run.preset.description, signal.length(),
                             signal.num_changepoints(), run.preset.noise.sigma,
                             detectability_index(signal, run.preset.noise.sigma).index,
                             std::log(static_cast<double>(signal.length()))});

    // Calibrate up front so the timed detect calls only read the cache.
    for (Method method : config.methods) {
      if (method != Method::mosum_baseline) continue;
      for (std::size_t g : run.grid.bandwidths)
        if (g >= config.baseline.min_bandwidth && 2 * g <= signal.length())
          cache.get(signal.length(), g, config.baseline.alpha, config.baseline.calibration_reps,
                    config.baseline.calibration_seed);
    }

    const std::size_t methods = config.methods.size();
    std::vector<ReplicationRecord> slots(config.reps * methods);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t r = next++; r < config.reps; r = next++)
        for (std::size_t m = 0; m < methods; ++m)
          slots[m * config.reps + r] = run_one(run, config.methods[m], r, config, cache);
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(config.threads,
                                                             static_cast<unsigned>(config.reps)));
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    for (Method method : config.methods) report.summaries.push_back(summarize(model, method, slots));
    report.records.insert(report.records.end(), slots.begin(), slots.end());
  }
  return report;
}

namespace {

std::string format_value(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

json config_json(const BenchConfig& c) {
  json methods = json::array();
  for (Method m : c.methods) methods.push_back(method_name(m));
  return {{"models", c.models},
          {"methods", methods},
          {"reps", c.reps},
          {"seed", c.seed},
          {"threads", c.threads},
          {"grid", {{"include_unit", c.grid.include_unit}, {"cap_divisor", c.grid.cap_divisor}}},
          {"sdll",
           {{"lambda", c.sdll.lambda},
            {"noise", "global-mad"},
            {"aggregate_importance", c.sdll.aggregate_importance},
            {"dominant_ratio", c.sdll.dominant_ratio}}},
          {"baseline",
           {{"alpha", c.baseline.alpha},
            {"min_bandwidth", c.baseline.min_bandwidth},
            {"merge_tolerance", c.baseline.merge_tolerance},
            {"calibration_reps", c.baseline.calibration_reps},
            {"calibration_seed", c.baseline.calibration_seed}}},
          {"threshold_cache", c.threshold_cache ? json(c.threshold_cache->string()) : json(nullptr)}};
}

BenchConfig config_from_json(const json& j) {
  BenchConfig c;
  c.models = j.at("models").get<std::vector<std::string>>();
  c.methods.clear();
  for (const auto& m : j.at("methods")) c.methods.push_back(parse_method(m.get<std::string>()));
  c.reps = j.at("reps").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.threads = j.at("threads").get<unsigned>();
  c.grid.include_unit = j.at("grid").at("include_unit").get<bool>();
  c.grid.cap_divisor = j.at("grid").at("cap_divisor").get<std::size_t>();
  c.sdll.lambda = j.at("sdll").at("lambda").get<double>();
  c.sdll.aggregate_importance = j.at("sdll").at("aggregate_importance").get<bool>();
  c.sdll.dominant_ratio = j.at("sdll").at("dominant_ratio").get<double>();
  const auto& b = j.at("baseline");
  c.baseline.alpha = b.at("alpha").get<double>();
  c.baseline.min_bandwidth = b.at("min_bandwidth").get<std::size_t>();
  c.baseline.merge_tolerance = b.at("merge_tolerance").get<double>();
  c.baseline.calibration_reps = b.at("calibration_reps").get<std::size_t>();
  c.baseline.calibration_seed = b.at("calibration_seed").get<std::uint64_t>();
  if (!j.at("threshold_cache").is_null())
    c.threshold_cache = j.at("threshold_cache").get<std::string>();
  return c;
}

struct MetricRow {
  const char* name;
  double MethodSummary::*field;
};

constexpr MetricRow kMetrics[] = {
    {"mean_error", &MethodSummary::mean_error},
    {"mean_abs_error", &MethodSummary::mean_abs_error},
    {"mean_sq_error", &MethodSummary::mean_sq_error},
    {"mean_fit_mse", &MethodSummary::mean_fit_mse},
    {"mean_time_s", &MethodSummary::mean_seconds},
};

std::string metric_rows(const BenchReport& report, bool with_timing) {
  std::string out;
  for (const auto& s : report.summaries)
    for (const auto& row : kMetrics) {
      if (!with_timing && row.field == &MethodSummary::mean_seconds) continue;
      out += s.model + ',' + std::string(method_name(s.method)) + ',' + row.name + ',' +
             format_value(s.*row.field) + '\n';
    }
  return out;
}

}  // namespace

std::string metric_section(const BenchReport& report) { return metric_rows(report, false); }

std::string report_to_csv(const BenchReport& report) {
  std::string out = "# config " + config_json(report.config).dump() + '\n';
  for (const auto& m : report.models)
    out += "# model " + m.name + ": " + m.description + "; T=" + std::to_string(m.length) +
           " N=" + std::to_string(m.num_changepoints) + " detectability=" +
           format_value(m.detectability) + " logT=" + format_value(m.log_length) + '\n';
  out += "model,method,metric,value\n";
  out += metric_rows(report, true);
  return out;
}

std::string report_to_json(const BenchReport& report) {
  json models = json::array();
  for (const auto& m : report.models)
    models.push_back({{"name", m.name},
                      {"description", m.description},
                      {"T", m.length},
                      {"N", m.num_changepoints},
                      {"sigma", m.sigma},
                      {"detectability", m.detectability},
                      {"log_T", m.log_length}});
  json results = json::array();
  for (const auto& s : report.summaries)
    results.push_back({{"model", s.model},
                       {"method", method_name(s.method)},
                       {"mean_error", s.mean_error},
                       {"mean_abs_error", s.mean_abs_error},
                       {"mean_sq_error", s.mean_sq_error},
                       {"mean_fit_mse", s.mean_fit_mse},
                       {"mean_time_s", s.mean_seconds}});
  json records = json::array();
  for (const auto& r : report.records)
    records.push_back({{"model", r.model},
                       {"method", method_name(r.method)},
                       {"rep", r.replication},
                       {"n_hat", r.n_hat},
                       {"error", r.error},
                       {"fit_mse", r.fit_mse},
                       {"time_s", r.seconds}});
  return json{{"config", config_json(report.config)},
              {"models", models},
              {"results", results},
              {"records", records}}
      .dump(2);
}

BenchReport report_from_json(std::string_view text) {
  const json j = json::parse(text);
  BenchReport report;
  report.config = config_from_json(j.at("config"));
  for (const auto& m : j.at("models"))
    report.models.push_back({m.at("name").get<std::string>(), m.at("description").get<std::string>(),
                             m.at("T").get<std::size_t>(), m.at("N").get<std::size_t>(),
                             m.at("sigma").get<double>(), m.at("detectability").get<double>(),
                             m.at("log_T").get<double>()});
  for (const auto& s : j.at("results"))
    report.summaries.push_back({s.at("model").get<std::string>(),
                                parse_method(s.at("method").get<std::string>()),
                                s.at("mean_error").get<double>(), s.at("mean_abs_error").get<double>(),
                                s.at("mean_sq_error").get<double>(), s.at("mean_fit_mse").get<double>(),
                                s.at("mean_time_s").get<double>()});
  for (const auto& r : j.at("records"))
    report.records.push_back({r.at("model").get<std::string>(),
                              parse_method(r.at("method").get<std::string>()),
                              r.at("rep").get<std::size_t>(), r.at("n_hat").get<std::size_t>(),
                              r.at("error").get<std::int64_t>(), r.at("fit_mse").get<double>(),
                              r.at("time_s").get<double>()});
  return report;
}

void emit_report(const BenchReport& report, const std::filesystem::path& file) {
  const bool as_json = file.extension() == ".json";
  write_text_file(file, as_json ? report_to_json(report) : report_to_csv(report));
}

}  // namespace mosum
