#include "mosum/io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace mosum {

using nlohmann::json;

namespace {

bool parse_number(const std::string& token, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(token, &used);
    return token.find_first_not_of(" \t\r", used) == std::string::npos;
  } catch (const std::exception&) {
    return false;
  }
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

json path_json(const SolutionPath& path) {
  json entries = json::array();
  for (const PathEntry& e : path.entries)
    entries.push_back({{"k", e.location},
                       {"importance", e.importance},
                       {"g_l", e.scale.left},
                       {"g_r", e.scale.right},
                       {"iter", e.iteration}});
  return entries;
}

}  // namespace

TimeSeries read_series_csv(std::istream& in) {
  TimeSeries series;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string token = trim(line);
    if (token.empty()) continue;
    double value = 0.0;
    if (!parse_number(token, value)) {
      if (line_no == 1) continue;
      throw std::runtime_error("line " + std::to_string(line_no) + ": not a number: '" + token + "'");
    }
    series.values.push_back(value);
  }
  validate_series(series.values);
  return series;
}

TimeSeries read_series_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  return read_series_csv(in);
}

void write_series_csv(std::ostream& out, const TimeSeries& series) {
  const auto old_precision = out.precision(17);
  out << "x\n";
  for (double v : series.values) out << v << '\n';
  out.precision(old_precision);
}

std::string signal_to_json(const PiecewiseSignal& signal) {
  return json{{"T", signal.length()},
              {"changepoints", signal.changepoints()},
              {"levels", signal.levels()}}
      .dump();
}

PiecewiseSignal signal_from_json(std::string_view text) {
  const json j = json::parse(text);
  return PiecewiseSignal(j.at("T").get<std::size_t>(),
                         j.at("changepoints").get<std::vector<std::size_t>>(),
                         j.at("levels").get<std::vector<double>>());
}

std::string path_to_json(const SolutionPath& path) { return path_json(path).dump(); }

SolutionPath path_from_json(std::string_view text) {
  SolutionPath path;
  for (const json& e : json::parse(text))
    path.entries.push_back({e.at("k").get<std::size_t>(), e.at("importance").get<double>(),
                            Scale{e.at("g_l").get<std::size_t>(), e.at("g_r").get<std::size_t>()},
                            e.at("iter").get<std::size_t>()});
  path.iterations = path.entries.size();
  return path;
}

std::string detection_to_json(const MosumSdllResult& result, const SdllConfig& config) {
  const Segmentation& seg = result.segmentation;
  return json{{"method", "mosum-sdll"},
              {"n_hat", seg.n_hat},
              {"changepoints", seg.changepoints},
              {"sigma_hat", seg.sigma_hat},
              {"threshold", seg.threshold},
              {"lambda", config.lambda},
              {"selection_rule",
               "steepest log-drop among drops landing below lambda*sigma_hat*sqrt(2 log T) "
               "or shrinking by at least dominant_ratio, landing at or above sigma_hat"},
              {"dominant_ratio", config.dominant_ratio},
              {"importance", config.aggregate_importance ? "aggregate" : "winning-scale"},
              {"path", path_json(result.path)}}
      .dump(2);
}

std::string detection_to_json(const BaselineResult& result, const BaselineConfig& config) {
  const Segmentation& seg = result.segmentation;
  json thresholds = json::array();
  for (const auto& t : result.thresholds)
    thresholds.push_back({{"G", t.bandwidth}, {"critical_value", t.critical_value}});
  return json{{"method", "mosum-baseline"},
              {"n_hat", seg.n_hat},
              {"changepoints", seg.changepoints},
              {"sigma_hat", seg.sigma_hat},
              {"alpha", config.alpha},
              {"min_bandwidth", config.min_bandwidth},
              {"merge_tolerance", config.merge_tolerance},
              {"calibration_reps", config.calibration_reps},
              {"calibration_seed", config.calibration_seed},
              {"thresholds", thresholds}}
      .dump(2);
}

void write_text_file(const std::filesystem::path& file, std::string_view text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
  if (!out) throw std::runtime_error("failed writing " + file.string());
}

}  // namespace mosum
