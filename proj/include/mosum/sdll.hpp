#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mosum/mosum.hpp"
#include "mosum/path.hpp"

namespace mosum {

enum class NoiseEstimator { global_mad };

struct SdllConfig {
  double lambda = 0.9;
  NoiseEstimator noise = NoiseEstimator::global_mad;
  /// Forwarded to the path generator.
  bool aggregate_importance = false;
  /// A drop by at least this factor is admissible even above the threshold.
  double dominant_ratio = 2.0;

  bool operator==(const SdllConfig&) const = default;
};

/// Estimated change points and the piecewise-constant fit they induce.
struct Segmentation {
  std::size_t n_hat = 0;
  std::vector<std::size_t> changepoints;
  std::vector<double> fitted;
  double sigma_hat = 0.0;
  double threshold = 0.0;
};

/// median |X_{t+1} - X_t| / (sqrt(2) * Phi^{-1}(3/4)).
double mad_sigma(std::span<const double> values);

/// lambda * sigma_hat * sqrt(2 log T).
double sdll_threshold(double lambda, double sigma_hat, std::size_t length);

struct SdllSelection {
  std::size_t n_hat = 0;
  /// Sorted by position.
  std::vector<std::size_t> changepoints;
};

/// Steepest drop to low levels.
///
/// With importances sorted decreasingly m_1 >= ... >= m_J: nothing is selected
/// when m_1 < threshold, everything when m_J >= threshold. Otherwise, with j*
/// the last index still at or above the threshold, N is the j maximizing
/// log m_j - log m_{j+1} (smallest j on ties) over the admissible drops:
///   - drops landing below the threshold (j >= j*), and
///   - dominant drops, m_j / m_{j+1} >= `dominant_ratio`, wherever they occur.
/// Only drops landing at or above `noise_floor` are admissible; if none is,
/// N = j*. The dominant set does not depend on the threshold, so N is
/// non-increasing in the threshold.
///
/// Multiscale maxima of pure noise routinely exceed the threshold by a little,
/// so a clean signal-to-noise drop may land just above it.
///
/// A complete path ends in importances close to zero whose log ratios are
/// arbitrarily large, so detect_mosum_sdll passes sigma_hat as the floor.
SdllSelection sdll_select(const SolutionPath& path, double threshold, double noise_floor = 0.0,
                          double dominant_ratio = 2.0);

/// Segment sample means for the given change points.
std::vector<double> fit_means(std::span<const double> values,
                              std::span<const std::size_t> changepoints);

struct MosumSdllResult {
  Segmentation segmentation;
  SolutionPath path;
};

MosumSdllResult detect_mosum_sdll(std::span<const double> values, const GridConfig& grid = {},
                                  const SdllConfig& config = {});

}  // namespace mosum
