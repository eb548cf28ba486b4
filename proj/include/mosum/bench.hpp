#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mosum/baseline.hpp"
#include "mosum/mosum.hpp"
#include "mosum/sdll.hpp"

namespace mosum {

enum class Method { mosum_sdll, mosum_baseline };

std::string_view method_name(Method method);
Method parse_method(std::string_view name);

struct BenchConfig {
  std::vector<std::string> models{"et", "eet"};
  std::vector<Method> methods{Method::mosum_sdll, Method::mosum_baseline};
  std::size_t reps = 100;
  std::uint64_t seed = 7;
  /// Worker threads for replications; results do not depend on it.
  unsigned threads = 1;
  GridConfig grid;
  SdllConfig sdll;
  BaselineConfig baseline;
  std::optional<std::filesystem::path> threshold_cache;

  void validate() const;
  bool operator==(const BenchConfig&) const = default;
};

struct ModelInfo {
  std::string name;
  std::string description;
  std::size_t length;
  std::size_t num_changepoints;
  double sigma;
  double detectability;
  double log_length;

  bool operator==(const ModelInfo&) const = default;
};

struct ReplicationRecord {
  std::string model;
  Method method;
  std::size_t replication;
  std::size_t n_hat;
  std::int64_t error;
  double fit_mse;
  double seconds;

  bool operator==(const ReplicationRecord&) const = default;
};

struct MethodSummary {
  std::string model;
  Method method;
  double mean_error;
  double mean_abs_error;
  double mean_sq_error;
  double mean_fit_mse;
  double mean_seconds;

  bool operator==(const MethodSummary&) const = default;
};

struct BenchReport {
  BenchConfig config;
  std::vector<ModelInfo> models;
  std::vector<MethodSummary> summaries;
  std::vector<ReplicationRecord> records;

  bool operator==(const BenchReport&) const = default;
};

/// Averages of N_hat - N, |N_hat - N|, (N_hat - N)^2 and (1/T) sum (f_hat - f)^2
/// over replications. Series r of every model is sample_series(..., seed, r);
/// only the detect call is timed.
BenchReport run_benchmark(const BenchConfig& config);

/// Aggregate rows for one (model, method) from per-replication records.
MethodSummary summarize(std::string model, Method method,
                        const std::vector<ReplicationRecord>& records);

/// CSV with columns model,method,metric,value preceded by '#' config lines.
std::string report_to_csv(const BenchReport& report);
std::string report_to_json(const BenchReport& report);
BenchReport report_from_json(std::string_view text);
/// Writes CSV or JSON depending on the file extension (.json, otherwise CSV).
void emit_report(const BenchReport& report, const std::filesystem::path& file);

/// The non-timing metric rows of the CSV report; identical for identical configs.
std::string metric_section(const BenchReport& report);

}  // namespace mosum
