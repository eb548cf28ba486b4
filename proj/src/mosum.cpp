#include "mosum/mosum.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mosum {

std::vector<Scale> BandwidthGrid::pairs() const {
  std::vector<Scale> out;
  out.reserve(bandwidths.size() * bandwidths.size());
  for (std::size_t left : bandwidths)
    for (std::size_t right : bandwidths) out.push_back({left, right});
  return out;
}

void BandwidthGrid::validate(std::size_t length) const {
  if (bandwidths.empty()) throw std::invalid_argument("bandwidth grid is empty");
  for (std::size_t i = 0; i < bandwidths.size(); ++i) {
    if (bandwidths[i] == 0) throw std::invalid_argument("bandwidths must be positive");
    if (i > 0 && bandwidths[i] <= bandwidths[i - 1])
      throw std::invalid_argument("bandwidths must be strictly increasing");
  }
  if (2 * largest() > length)
    throw std::invalid_argument("largest bandwidth pair " + std::to_string(largest()) + "+" +
                                std::to_string(largest()) + " exceeds series length " +
                                std::to_string(length));
}

BandwidthGrid build_grid(std::size_t length, bool include_unit, std::size_t cap_divisor) {
  if (length < 6) throw std::invalid_argument("bandwidth grid needs T >= 6");
  if (cap_divisor < 2) throw std::invalid_argument("cap divisor must be at least 2");
  const std::size_t cap = length / cap_divisor;
  BandwidthGrid grid;
  std::size_t previous = 1;
  std::size_t current = 2;
  if (include_unit && cap >= 1) grid.bandwidths.push_back(1);
  while (current <= cap) {
    grid.bandwidths.push_back(current);
    const std::size_t next = current + previous;
    previous = current;
    current = next;
  }
  if (grid.bandwidths.empty())
    throw std::invalid_argument("cap divisor " + std::to_string(cap_divisor) +
                                " leaves no bandwidths for T=" + std::to_string(length));
  grid.validate(length);
  return grid;
}

std::vector<double> prefix_sums(std::span<const double> values) {
  std::vector<double> sums(values.size() + 1, 0.0);
  for (std::size_t t = 0; t < values.size(); ++t) sums[t + 1] = sums[t] + values[t];
  return sums;
}

std::vector<double> mosum_stat(std::span<const double> values, std::span<const double> prefix,
                               std::size_t left, std::size_t right) {
  const std::size_t length = values.size();
  if (prefix.size() != length + 1) throw std::invalid_argument("prefix sums do not match series");
  if (left == 0 || right == 0) throw std::invalid_argument("bandwidths must be positive");
  if (left + right > length)
    throw std::invalid_argument("bandwidths " + std::to_string(left) + "+" + std::to_string(right) +
                                " exceed series length " + std::to_string(length));
  std::vector<double> stat(length, 0.0);
  const double gl = static_cast<double>(left);
  const double gr = static_cast<double>(right);
  const double weight = std::sqrt(gl * gr / (gl + gr));
  for (std::size_t k = left; k + right <= length; ++k) {
    const double left_mean = (prefix[k] - prefix[k - left]) / gl;
    const double right_mean = (prefix[k + right] - prefix[k]) / gr;
    stat[k] = weight * (left_mean - right_mean);
  }
  return stat;
}

std::vector<double> mosum_stat(std::span<const double> values, std::size_t left,
                               std::size_t right) {
  const auto prefix = prefix_sums(values);
  return mosum_stat(values, prefix, left, right);
}

std::vector<std::size_t> local_maximizers(std::span<const double> field, std::size_t left,
                                          std::size_t right) {
  if (left == 0 || right == 0) throw std::invalid_argument("bandwidths must be positive");
  std::vector<std::size_t> out;
  if (field.size() < 2) return out;
  const std::size_t last = field.size() - 1;
  // Sliding maximum of |field| over [k - left + 1, k + right - 1] clipped to [1, last].
  std::deque<std::size_t> window;
  std::size_t pushed = 1;
  for (std::size_t k = 1; k <= last; ++k) {
    const std::size_t hi = std::min(last, k + right - 1);
    for (; pushed <= hi; ++pushed) {
      const double value = std::abs(field[pushed]);
      while (!window.empty() && std::abs(field[window.back()]) <= value) window.pop_back();
      window.push_back(pushed);
    }
    const std::size_t lo = k > left ? k - left + 1 : 1;
    while (window.front() < lo) window.pop_front();
    const double here = std::abs(field[k]);
    if (here != 0.0 && here >= std::abs(field[window.front()])) out.push_back(k);
  }
  return out;
}

std::vector<double> mask(std::span<const double> field, std::span<const std::size_t> maximizers,
                         std::size_t left, std::size_t right) {
  std::vector<double> out(field.size(), 0.0);
  if (field.empty()) return out;
  const std::size_t last = field.size() - 1;
  // Maximizers are sorted, so the covered region can be swept once.
  std::size_t covered_to = 0;
  for (std::size_t k : maximizers) {
    const std::size_t lo = std::max(covered_to + 1, k > left ? k - left + 1 : std::size_t{1});
    const std::size_t hi = std::min(last, k + right - 1);
    for (std::size_t j = lo; j <= hi; ++j) out[j] = field[j];
    covered_to = std::max(covered_to, hi);
  }
  return out;
}

ScaleField compute_scale_field(std::span<const double> values, std::span<const double> prefix,
                               Scale scale) {
  ScaleField field;
  field.scale = scale;
  field.raw = mosum_stat(values, prefix, scale.left, scale.right);
  field.maximizers = local_maximizers(field.raw, scale.left, scale.right);
  field.masked = mask(field.raw, field.maximizers, scale.left, scale.right);
  return field;
}

std::vector<ScaleField> compute_fields(std::span<const double> values, const BandwidthGrid& grid) {
  grid.validate(values.size());
  const auto prefix = prefix_sums(values);
  std::vector<ScaleField> fields;
  for (const Scale& scale : grid.pairs())
    fields.push_back(compute_scale_field(values, prefix, scale));
  return fields;
}

std::vector<double> aggregate(std::span<const ScaleField> fields) {
  if (fields.empty()) return {};
  std::vector<double> total(fields.front().masked.size(), 0.0);
  for (const ScaleField& field : fields) {
    if (field.masked.size() != total.size())
      throw std::invalid_argument("scale fields have mismatched lengths");
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += field.masked[k];
  }
  return total;
}

void write_fields_csv(std::ostream& out, std::span<const ScaleField> fields) {
  out << "k,G_l,G_r,m_tilde,m_masked\n";
  const auto old_precision = out.precision(17);
  for (const ScaleField& field : fields)
    for (std::size_t k = 1; k < field.raw.size(); ++k)
      out << k << ',' << field.scale.left << ',' << field.scale.right << ',' << field.raw[k] << ','
          << field.masked[k] << '\n';
  out.precision(old_precision);
}

}  // namespace mosum
