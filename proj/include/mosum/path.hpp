#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mosum/mosum.hpp"

namespace mosum {

struct PathEntry {
  std::size_t location;
  double importance;
  Scale scale;
  std::size_t iteration;

  bool operator==(const PathEntry&) const = default;
};

/// Candidates in extraction order.
struct SolutionPath {
  std::vector<PathEntry> entries;
  std::size_t iterations = 0;

  bool operator==(const SolutionPath&) const = default;
};

struct PathOptions {
  /// Record |V(k)| at the chosen location instead of the winning scale's
  /// masked magnitude.
  bool aggregate_importance = false;
};

/// Called after every iteration with the entry just added and the pruned
/// state (masked fields, incrementally maintained V).
using PathObserver = std::function<void(const PathEntry&, std::span<const ScaleField>,
                                        std::span<const double>)>;

/// Multiscale MOSUM solution path.
///
/// Each iteration takes k = argmax |V|, records the scale with the largest
/// |M_k|, then for every scale zeroes the whole window of each maximizer lying
/// in (k - G_r, k + G_l) and subtracts the removed mass from V. Stops once V
/// vanishes everywhere. Ties go to the smallest k, then to the scale with the
/// smallest G_l + G_r, then the smallest G_l.
SolutionPath generate_path(std::vector<ScaleField> fields, std::vector<double> total,
                           const PathOptions& options = {}, const PathObserver& observer = {});

/// Computes fields and V for `values` on `grid`, then runs generate_path.
SolutionPath solution_path(std::span<const double> values, const BandwidthGrid& grid,
                           const PathOptions& options = {});

inline std::size_t path_depth(const SolutionPath& path) noexcept { return path.entries.size(); }

}  // namespace mosum
