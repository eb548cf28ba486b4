#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "mosum/mosum.hpp"
#include "mosum/sdll.hpp"

namespace mosum {

struct BaselineConfig {
  double alpha = 0.9;
  std::size_t min_bandwidth = 2;
  /// A candidate at bandwidth G is dropped when an accepted change point lies
  /// within +-merge_tolerance * G.
  double merge_tolerance = 0.4;
  std::size_t calibration_reps = 1000;
  std::uint64_t calibration_seed = 20190527;

  void validate() const;
  bool operator==(const BaselineConfig&) const = default;
};

struct CalibratedThreshold {
  std::size_t length;
  std::size_t bandwidth;
  double alpha;
  std::size_t reps;
  std::uint64_t seed;
  double critical_value;

  bool operator==(const CalibratedThreshold&) const = default;
};

/// max_k |M(G,G)| / sigma_hat for each of `reps` standard Gaussian series of
/// length T; replication r uses noise stream (seed, r).
std::vector<double> simulate_null_maxima(std::size_t length, std::size_t bandwidth,
                                         std::size_t reps, std::uint64_t seed);

/// Linear-interpolation (type 7) empirical quantile; `sorted` ascending.
double empirical_quantile(std::span<const double> sorted, double probability);

/// Empirical (1 - alpha)-quantile of the null maxima.
CalibratedThreshold calibrate_threshold(std::size_t length, std::size_t bandwidth, double alpha,
                                        std::size_t reps, std::uint64_t seed);

/// Memoizes calibrated thresholds, optionally backed by a CSV file with
/// columns T,G,alpha,reps,seed,critical_value. Safe to share across threads.
class ThresholdCache {
public:
  ThresholdCache() = default;
  explicit ThresholdCache(std::filesystem::path file);

  CalibratedThreshold get(std::size_t length, std::size_t bandwidth, double alpha,
                          std::size_t reps, std::uint64_t seed);
  std::size_t size() const;

private:
  using Key = std::tuple<std::size_t, std::size_t, double, std::size_t, std::uint64_t>;

  std::optional<std::filesystem::path> file_;
  std::map<Key, double> values_;
  mutable std::mutex mutex_;
};

struct BaselineResult {
  Segmentation segmentation;
  std::vector<CalibratedThreshold> thresholds;
};

/// Multiscale symmetric-bandwidth MOSUM with Monte-Carlo critical values and
/// bottom-up merging. Only bandwidths G >= min_bandwidth with 2G <= T are used.
BaselineResult detect_baseline(std::span<const double> values, const BaselineConfig& config,
                               const BandwidthGrid& grid, ThresholdCache& cache);
BaselineResult detect_baseline(std::span<const double> values, const BaselineConfig& config,
                               const BandwidthGrid& grid);

}  // namespace mosum
