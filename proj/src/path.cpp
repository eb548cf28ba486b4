#include "mosum/path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mosum {

namespace {

bool wins_over(const ScaleField& challenger, const ScaleField& holder, std::size_t k) {
  const double a = std::abs(challenger.masked[k]);
  const double b = std::abs(holder.masked[k]);
  if (a != b) return a > b;
  const std::size_t wa = challenger.scale.left + challenger.scale.right;
  const std::size_t wb = holder.scale.left + holder.scale.right;
  if (wa != wb) return wa < wb;
  return challenger.scale.left < holder.scale.left;
}

}  // namespace

SolutionPath generate_path(std::vector<ScaleField> fields, std::vector<double> total,
                           const PathOptions& options, const PathObserver& observer) {
  SolutionPath path;
  if (fields.empty()) {
    if (std::any_of(total.begin(), total.end(), [](double v) { return v != 0.0; }))
      throw std::invalid_argument("nonzero aggregate without scale fields");
    return path;
  }
  const std::size_t length = total.size();
  for (const ScaleField& field : fields)
    if (field.masked.size() != length || field.raw.size() != length)
      throw std::invalid_argument("scale field length does not match aggregate");

  // Number of scales with a nonzero masked value at k; when it drops to zero V(k)
  // is reset to an exact zero so rounding residue cannot keep the loop alive.
  std::vector<std::size_t> support(length, 0);
  for (const ScaleField& field : fields)
    for (std::size_t k = 0; k < length; ++k) support[k] += field.masked[k] != 0.0;
  for (std::size_t k = 0; k < length; ++k)
    if (support[k] == 0) total[k] = 0.0;

  for (;;) {
    std::size_t best = 0;
    double best_value = 0.0;
    for (std::size_t k = 1; k < length; ++k) {
      const double v = std::abs(total[k]);
      if (v > best_value) {
        best_value = v;
        best = k;
      }
    }
    if (best_value == 0.0) break;

    const ScaleField* winner = &fields.front();
    for (const ScaleField& field : fields)
      if (wins_over(field, *winner, best)) winner = &field;

    PathEntry entry{best,
                    options.aggregate_importance ? best_value : std::abs(winner->masked[best]),
                    winner->scale, path.iterations};
    path.entries.push_back(entry);

    for (ScaleField& field : fields) {
      const std::size_t left = field.scale.left;
      const std::size_t right = field.scale.right;
      auto& maxima = field.maximizers;
      // Maximizers m with best - right < m < best + left.
      const auto first = std::lower_bound(maxima.begin(), maxima.end(), best + 1,
                                          [right](std::size_t m, std::size_t bound) {
                                            return m + right < bound;
                                          });
      const auto last = std::lower_bound(first, maxima.end(), best + left);
      for (auto it = first; it != last; ++it) {
        const std::size_t lo = *it > left ? *it - left + 1 : 1;
        const std::size_t hi = std::min(length - 1, *it + right - 1);
        for (std::size_t j = lo; j <= hi; ++j) {
          if (field.masked[j] == 0.0) continue;
          total[j] -= field.masked[j];
          field.masked[j] = 0.0;
          if (--support[j] == 0) total[j] = 0.0;
        }
      }
      maxima.erase(first, last);
    }
    ++path.iterations;
    if (observer) observer(entry, fields, total);
  }
  return path;
}

SolutionPath solution_path(std::span<const double> values, const BandwidthGrid& grid,
                           const PathOptions& options) {
  auto fields = compute_fields(values, grid);
  auto total = aggregate(fields);
  return generate_path(std::move(fields), std::move(total), options);
}

}  // namespace mosum
