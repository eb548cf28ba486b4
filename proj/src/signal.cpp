#include "mosum/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mosum/rng.hpp"

namespace mosum {

PiecewiseSignal::PiecewiseSignal(std::size_t length, std::vector<std::size_t> changepoints,
                                 std::vector<double> levels)
    : length_(length), changepoints_(std::move(changepoints)), levels_(std::move(levels)) {
  if (length_ == 0) throw std::invalid_argument("signal length must be positive");
  if (levels_.size() != changepoints_.size() + 1)
    throw std::invalid_argument("need exactly one more level than change points");
  std::size_t previous = 0;
  for (std::size_t cp : changepoints_) {
    if (cp <= previous || cp >= length_)
      throw std::invalid_argument("change points must be strictly increasing within [1, T-1]");
    previous = cp;
  }
  for (double level : levels_)
    if (!std::isfinite(level)) throw std::invalid_argument("levels must be finite");
  for (std::size_t i = 0; i + 1 < levels_.size(); ++i)
    if (levels_[i] == levels_[i + 1])
      throw std::invalid_argument("adjacent levels must differ");
}

std::vector<double> PiecewiseSignal::jump_sizes() const {
  std::vector<double> jumps(changepoints_.size());
  for (std::size_t i = 0; i < jumps.size(); ++i) jumps[i] = std::abs(levels_[i + 1] - levels_[i]);
  return jumps;
}

std::vector<std::size_t> PiecewiseSignal::spacings() const {
  const std::size_t n = changepoints_.size();
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = i == 0 ? 0 : changepoints_[i - 1];
    const std::size_t next = i + 1 == n ? length_ : changepoints_[i + 1];
    out[i] = std::min(changepoints_[i] - prev, next - changepoints_[i]);
  }
  return out;
}

std::size_t PiecewiseSignal::min_spacing() const {
  const auto s = spacings();
  return s.empty() ? length_ : *std::min_element(s.begin(), s.end());
}

std::vector<double> PiecewiseSignal::mean_function() const {
  std::vector<double> f(length_);
  std::size_t start = 0;
  for (std::size_t seg = 0; seg < levels_.size(); ++seg) {
    const std::size_t end = seg < changepoints_.size() ? changepoints_[seg] : length_;
    std::fill(f.begin() + static_cast<std::ptrdiff_t>(start),
              f.begin() + static_cast<std::ptrdiff_t>(end), levels_[seg]);
    start = end;
  }
  return f;
}

PiecewiseSignal make_teeth(std::size_t length, std::size_t period, double low, double high) {
  if (period == 0 || period >= length) throw std::invalid_argument("teeth period must be in [1, T)");
  if (length < 2 * period) throw std::invalid_argument("teeth need T >= 2 * period");
  if (low == high) throw std::invalid_argument("teeth levels must differ");
  std::vector<std::size_t> cps;
  std::vector<double> levels{low};
  for (std::size_t p = period; p < length; p += period) {
    cps.push_back(p);
    levels.push_back(levels.size() % 2 == 0 ? low : high);
  }
  return PiecewiseSignal(length, std::move(cps), std::move(levels));
}

namespace {

Preset make_mix() {
  // Jumps shrink while spacings grow: short segments with large changes at the
  // start, long segments with small changes at the end.
  std::vector<std::size_t> cps{11, 21, 41, 61, 91, 121, 161, 201, 251, 301, 361, 421, 491};
  std::vector<double> levels;
  for (int v = 7; v >= 1; --v) {
    levels.push_back(v);
    levels.push_back(-v);
  }
  return {"mix",
          "mix analogue: T=560, 13 change points, levels 7,-7,6,-6,...,1,-1, sigma=4",
          PiecewiseSignal(560, std::move(cps), std::move(levels)),
          NoiseSpec{4.0, NoiseKind::gaussian, 0}};
}

}  // namespace

Preset preset(std::string_view name) {
  if (name == "et")
    return {"et", "extreme.teeth analogue: T=1000, period 5, levels 0/1, sigma=0.3",
            make_teeth(1000, 5, 0.0, 1.0), NoiseSpec{0.3, NoiseKind::gaussian, 0}};
  if (name == "eet")
    return {"eet", "extreme.extreme.teeth analogue: T=999, period 3, levels 0/2, sigma=0.3",
            make_teeth(999, 3, 0.0, 2.0), NoiseSpec{0.3, NoiseKind::gaussian, 0}};
  if (name == "mix") return make_mix();
  throw std::invalid_argument("unknown preset '" + std::string(name) + "' (expected et, eet or mix)");
}

std::vector<std::string> preset_names() { return {"et", "eet", "mix"}; }

TimeSeries sample_series(const PiecewiseSignal& signal, const NoiseSpec& noise,
                         std::uint64_t replication) {
  if (!(noise.sigma >= 0.0) || !std::isfinite(noise.sigma))
    throw std::invalid_argument("noise sigma must be finite and nonnegative");
  TimeSeries series{signal.mean_function()};
  if (noise.sigma == 0.0) return series;
  GaussianStream eps(noise.seed, replication);
  for (double& x : series.values) x += noise.sigma * eps();
  return series;
}

Detectability detectability_index(std::span<const std::size_t> spacings,
                                  std::span<const double> jumps, double sigma, double length) {
  if (spacings.empty() || spacings.size() != jumps.size())
    throw std::invalid_argument("detectability index needs at least one change point");
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be nonnegative");
  if (!(length > 0.0)) throw std::invalid_argument("length must be positive");
  const double threshold = std::log(length);
  if (sigma == 0.0) return {std::numeric_limits<double>::infinity(), threshold, true};
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < jumps.size(); ++i)
    smallest = std::min(smallest, static_cast<double>(spacings[i]) * jumps[i] * jumps[i]);
  const double index = smallest / (sigma * sigma);
  return {index, threshold, index >= threshold};
}

Detectability detectability_index(const PiecewiseSignal& signal, double sigma) {
  const auto gaps = signal.spacings();
  const auto jumps = signal.jump_sizes();
  return detectability_index(gaps, jumps, sigma, static_cast<double>(signal.length()));
}

void validate_series(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("series needs at least two observations");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("series contains non-finite values");
}

}  // namespace mosum
