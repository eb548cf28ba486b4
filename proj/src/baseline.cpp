#include "mosum/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mosum/rng.hpp"
#include "mosum/signal.hpp"

namespace mosum {

void BaselineConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  if (min_bandwidth < 2) throw std::invalid_argument("minimum bandwidth must be at least 2");
  if (!(merge_tolerance > 0.0 && merge_tolerance <= 1.0))
    throw std::invalid_argument("merge tolerance must lie in (0, 1]");
  if (calibration_reps < 100) throw std::invalid_argument("calibration needs at least 100 replications");
}

std::vector<double> simulate_null_maxima(std::size_t length, std::size_t bandwidth,
                                         std::size_t reps, std::uint64_t seed) {
  if (bandwidth == 0 || 2 * bandwidth > length)
    throw std::invalid_argument("bandwidth " + std::to_string(bandwidth) +
                                " too large for series length " + std::to_string(length));
  std::vector<double> maxima(reps);
  std::vector<double> noise(length);
  for (std::size_t r = 0; r < reps; ++r) {
    GaussianStream eps(seed, r);
    for (double& x : noise) x = eps();
    const auto stat = mosum_stat(noise, bandwidth, bandwidth);
    double largest = 0.0;
    for (double v : stat) largest = std::max(largest, std::abs(v));
    const double sigma = mad_sigma(noise);
    maxima[r] = sigma > 0.0 ? largest / sigma : std::numeric_limits<double>::infinity();
  }
  return maxima;
}

double empirical_quantile(std::span<const double> sorted, double probability) {
  if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(probability >= 0.0 && probability <= 1.0))
    throw std::invalid_argument("quantile probability must lie in [0, 1]");
  const double h = probability * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

CalibratedThreshold calibrate_threshold(std::size_t length, std::size_t bandwidth, double alpha,
                                        std::size_t reps, std::uint64_t seed) {
  if (reps < 100) throw std::invalid_argument("calibration needs at least 100 replications");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  auto maxima = simulate_null_maxima(length, bandwidth, reps, seed);
  std::sort(maxima.begin(), maxima.end());
  return {length, bandwidth, alpha, reps, seed, empirical_quantile(maxima, 1.0 - alpha)};
}

ThresholdCache::ThresholdCache(std::filesystem::path file) : file_(std::move(file)) {
  std::ifstream in(*file_);
  if (!in) return;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.rfind("T,", 0) == 0) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::size_t length = 0, bandwidth = 0, reps = 0;
    double alpha = 0.0, value = 0.0;
    std::uint64_t seed = 0;
    if (!(fields >> length >> bandwidth >> alpha >> reps >> seed >> value))
      throw std::runtime_error("malformed threshold cache line " + std::to_string(line_no) + " in " +
                               file_->string());
    values_[Key{length, bandwidth, alpha, reps, seed}] = value;
  }
}

CalibratedThreshold ThresholdCache::get(std::size_t length, std::size_t bandwidth, double alpha,
                                        std::size_t reps, std::uint64_t seed) {
  const Key key{length, bandwidth, alpha, reps, seed};
  {
    std::lock_guard lock(mutex_);
    if (auto it = values_.find(key); it != values_.end())
      return {length, bandwidth, alpha, reps, seed, it->second};
  }
  const auto fresh = calibrate_threshold(length, bandwidth, alpha, reps, seed);
  std::lock_guard lock(mutex_);
  values_.emplace(key, fresh.critical_value);
  if (file_) {
    const bool fresh_file = !std::filesystem::exists(*file_) || std::filesystem::file_size(*file_) == 0;
    std::ofstream out(*file_, std::ios::app);
    if (!out) throw std::runtime_error("cannot write threshold cache " + file_->string());
    if (fresh_file) out << "T,G,alpha,reps,seed,critical_value\n";
    out.precision(17);
    out << length << ',' << bandwidth << ',' << alpha << ',' << reps << ',' << seed << ','
        << fresh.critical_value << '\n';
  }
  return fresh;
}

std::size_t ThresholdCache::size() const {
  std::lock_guard lock(mutex_);
  return values_.size();
}

BaselineResult detect_baseline(std::span<const double> values, const BaselineConfig& config,
                               const BandwidthGrid& grid, ThresholdCache& cache) {
  config.validate();
  validate_series(values);
  const std::size_t length = values.size();
  std::vector<std::size_t> bandwidths;
  for (std::size_t g : grid.bandwidths)
    if (g >= config.min_bandwidth && 2 * g <= length) bandwidths.push_back(g);
  if (bandwidths.empty()) throw std::invalid_argument("no usable bandwidths for the baseline");
  std::sort(bandwidths.begin(), bandwidths.end());

  BaselineResult result;
  Segmentation& seg = result.segmentation;
  seg.sigma_hat = mad_sigma(values);
  const auto prefix = prefix_sums(values);

  std::vector<std::size_t> accepted;
  for (std::size_t g : bandwidths) {
    const auto threshold = cache.get(length, g, config.alpha, config.calibration_reps,
                                     config.calibration_seed);
    result.thresholds.push_back(threshold);
    const auto stat = mosum_stat(values, prefix, g, g);
    const double bar = threshold.critical_value * seg.sigma_hat;
    std::vector<std::size_t> candidates;
    for (std::size_t k : local_maximizers(stat, g, g))
      if (std::abs(stat[k]) >= bar) candidates.push_back(k);
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(stat[a]) > std::abs(stat[b]);
    });
    const double radius = config.merge_tolerance * static_cast<double>(g);
    for (std::size_t k : candidates) {
      const bool clashes = std::any_of(accepted.begin(), accepted.end(), [&](std::size_t a) {
        const auto gap = a > k ? a - k : k - a;
        return static_cast<double>(gap) <= radius;
      });
      if (!clashes) accepted.push_back(k);
    }
  }
  std::sort(accepted.begin(), accepted.end());
  seg.n_hat = accepted.size();
  seg.changepoints = std::move(accepted);
  seg.fitted = fit_means(values, seg.changepoints);
  return result;
}

BaselineResult detect_baseline(std::span<const double> values, const BaselineConfig& config,
                               const BandwidthGrid& grid) {
  ThresholdCache cache;
  return detect_baseline(values, config, grid, cache);
}

}  // namespace mosum
