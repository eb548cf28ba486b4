#include "mosum/sdll.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mosum/signal.hpp"

namespace mosum {

namespace {

constexpr double kNormalQuartile = 0.6744897501960817;

}  // namespace

double mad_sigma(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("MAD estimate needs at least two values");
  std::vector<double> diffs(values.size() - 1);
  for (std::size_t t = 0; t + 1 < values.size(); ++t) diffs[t] = std::abs(values[t + 1] - values[t]);
  const std::size_t mid = diffs.size() / 2;
  std::nth_element(diffs.begin(), diffs.begin() + static_cast<std::ptrdiff_t>(mid), diffs.end());
  double median = diffs[mid];
  if (diffs.size() % 2 == 0) {
    const double below = *std::max_element(diffs.begin(), diffs.begin() + static_cast<std::ptrdiff_t>(mid));
    median = 0.5 * (median + below);
  }
  return median / (std::numbers::sqrt2 * kNormalQuartile);
}

double sdll_threshold(double lambda, double sigma_hat, std::size_t length) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (length < 2) throw std::invalid_argument("series too short for a threshold");
  return lambda * sigma_hat * std::sqrt(2.0 * std::log(static_cast<double>(length)));
}

SdllSelection sdll_select(const SolutionPath& path, double threshold, double noise_floor,
                          double dominant_ratio) {
  if (!(dominant_ratio > 1.0)) throw std::invalid_argument("dominant ratio must exceed 1");
  std::vector<const PathEntry*> order;
  order.reserve(path.entries.size());
  for (const PathEntry& e : path.entries) {
    if (!(e.importance > 0.0)) throw std::invalid_argument("path importances must be positive");
    order.push_back(&e);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const PathEntry* a, const PathEntry* b) { return a->importance > b->importance; });

  const std::size_t count = order.size();
  std::size_t n_hat = 0;
  if (count == 0 || order.front()->importance < threshold) {
    n_hat = 0;
  } else if (order.back()->importance >= threshold) {
    n_hat = count;
  } else {
    // One-based j* = number of importances at or above the threshold.
    std::size_t above = 0;
    while (order[above]->importance >= threshold) ++above;
    n_hat = above;
    double steepest = -1.0;
    const double dominant = std::log(dominant_ratio);
    for (std::size_t j = 1; j < count && order[j]->importance >= noise_floor; ++j) {
      const double drop = std::log(order[j - 1]->importance) - std::log(order[j]->importance);
      if (j < above && !(drop >= dominant)) continue;
      if (drop > steepest) {
        steepest = drop;
        n_hat = j;
      }
    }
  }

  SdllSelection selection;
  selection.n_hat = n_hat;
  for (std::size_t i = 0; i < n_hat; ++i) selection.changepoints.push_back(order[i]->location);
  std::sort(selection.changepoints.begin(), selection.changepoints.end());
  return selection;
}

std::vector<double> fit_means(std::span<const double> values,
                              std::span<const std::size_t> changepoints) {
  const std::size_t length = values.size();
  std::size_t previous = 0;
  for (std::size_t cp : changepoints) {
    if (cp <= previous || cp >= length)
      throw std::invalid_argument("change points must be strictly increasing within [1, T-1]");
    previous = cp;
  }
  std::vector<double> fitted(length);
  std::size_t start = 0;
  for (std::size_t seg = 0; seg <= changepoints.size(); ++seg) {
    const std::size_t end = seg < changepoints.size() ? changepoints[seg] : length;
    double sum = 0.0;
    for (std::size_t t = start; t < end; ++t) sum += values[t];
    const double mean = end > start ? sum / static_cast<double>(end - start) : 0.0;
    std::fill(fitted.begin() + static_cast<std::ptrdiff_t>(start),
              fitted.begin() + static_cast<std::ptrdiff_t>(end), mean);
    start = end;
  }
  return fitted;
}

MosumSdllResult detect_mosum_sdll(std::span<const double> values, const GridConfig& grid,
                                  const SdllConfig& config) {
  validate_series(values);
  if (values.size() < 6) throw std::invalid_argument("MOSUM.SDLL needs T >= 6");
  MosumSdllResult result;
  result.path = solution_path(values, build_grid(values.size(), grid),
                              PathOptions{config.aggregate_importance});
  Segmentation& seg = result.segmentation;
  seg.sigma_hat = mad_sigma(values);
  seg.threshold = sdll_threshold(config.lambda, seg.sigma_hat, values.size());
  auto selection = sdll_select(result.path, seg.threshold, seg.sigma_hat, config.dominant_ratio);
  seg.n_hat = selection.n_hat;
  seg.changepoints = std::move(selection.changepoints);
  seg.fitted = fit_means(values, seg.changepoints);
  return result;
}

}  // namespace mosum
