#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace mosum {

// Position-indexed arrays in this module have length T and hold the value for
// position k (1 <= k <= T-1) at index k. Index 0 is unused and always zero.

/// Bandwidth pair (G_l, G_r).
struct Scale {
  std::size_t left;
  std::size_t right;

  bool operator==(const Scale&) const = default;
};

struct BandwidthGrid {
  /// Strictly increasing.
  std::vector<std::size_t> bandwidths;

  /// Full Cartesian product, left bandwidth outer, right inner.
  std::vector<Scale> pairs() const;
  std::size_t largest() const { return bandwidths.empty() ? 0 : bandwidths.back(); }
  /// Throws unless every pair admits at least one valid position for length T.
  void validate(std::size_t length) const;
};

struct GridConfig {
  bool include_unit = true;
  std::size_t cap_divisor = 3;

  bool operator==(const GridConfig&) const = default;
};

/// Fibonacci-type grid 1, 2, 3, 5, 8, ... truncated at floor(T / cap_divisor).
BandwidthGrid build_grid(std::size_t length, bool include_unit, std::size_t cap_divisor);
inline BandwidthGrid build_grid(std::size_t length, const GridConfig& config) {
  return build_grid(length, config.include_unit, config.cap_divisor);
}

/// S_0 = 0, S_k = X_1 + ... + X_k; length T + 1.
std::vector<double> prefix_sums(std::span<const double> values);

/// Unscaled MOSUM statistic
///   sqrt(G_l G_r / (G_l + G_r)) * (mean(X_{k-G_l+1..k}) - mean(X_{k+1..k+G_r}))
/// for G_l <= k <= T - G_r, zero elsewhere.
std::vector<double> mosum_stat(std::span<const double> values, std::size_t left, std::size_t right);
std::vector<double> mosum_stat(std::span<const double> values, std::span<const double> prefix,
                               std::size_t left, std::size_t right);

/// Positions whose |statistic| is nonzero and no smaller than any |statistic|
/// in the open window (k - G_l, k + G_r). Ties are all kept.
std::vector<std::size_t> local_maximizers(std::span<const double> field, std::size_t left,
                                          std::size_t right);

/// Keeps field values inside the union of windows (k - G_l, k + G_r) over the
/// given maximizers and zeroes everything else.
std::vector<double> mask(std::span<const double> field, std::span<const std::size_t> maximizers,
                         std::size_t left, std::size_t right);

struct ScaleField {
  Scale scale;
  std::vector<double> raw;
  std::vector<std::size_t> maximizers;
  std::vector<double> masked;
};

ScaleField compute_scale_field(std::span<const double> values, std::span<const double> prefix,
                               Scale scale);

/// One field per grid pair, in BandwidthGrid::pairs() order.
std::vector<ScaleField> compute_fields(std::span<const double> values, const BandwidthGrid& grid);

/// V(k) = sum over scales of the masked statistic, summed in field order.
std::vector<double> aggregate(std::span<const ScaleField> fields);

/// CSV dump with columns k,G_l,G_r,m_tilde,m_masked.
void write_fields_csv(std::ostream& out, std::span<const ScaleField> fields);

}  // namespace mosum
