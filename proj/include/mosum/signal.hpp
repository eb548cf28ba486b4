#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mosum {

/// Observed series X_1..X_T, stored zero-based (values[t - 1] holds X_t).
struct TimeSeries {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
};

/// Piecewise-constant mean function.
///
/// A change point at position p means the mean changes between observations p
/// and p + 1 (one-based), so 1 <= p < T.
class PiecewiseSignal {
public:
  PiecewiseSignal(std::size_t length, std::vector<std::size_t> changepoints,
                  std::vector<double> levels);

  std::size_t length() const noexcept { return length_; }
  std::size_t num_changepoints() const noexcept { return changepoints_.size(); }
  const std::vector<std::size_t>& changepoints() const noexcept { return changepoints_; }
  const std::vector<double>& levels() const noexcept { return levels_; }

  /// |level_{i+1} - level_i| for each change point.
  std::vector<double> jump_sizes() const;
  /// min(eta_i - eta_{i-1}, eta_{i+1} - eta_i) with eta_0 = 0, eta_{N+1} = T.
  std::vector<std::size_t> spacings() const;
  /// Smallest spacing; equals T when there are no change points.
  std::size_t min_spacing() const;

  /// Mean function f_1..f_T (zero-based).
  std::vector<double> mean_function() const;

  bool operator==(const PiecewiseSignal&) const = default;

private:
  std::size_t length_;
  std::vector<std::size_t> changepoints_;
  std::vector<double> levels_;
};

enum class NoiseKind { gaussian };

struct NoiseSpec {
  double sigma = 1.0;
  NoiseKind kind = NoiseKind::gaussian;
  std::uint64_t seed = 0;
};

/// Alternating low/high blocks of `period` observations.
PiecewiseSignal make_teeth(std::size_t length, std::size_t period, double low, double high);

struct Preset {
  std::string name;
  std::string description;
  PiecewiseSignal signal;
  NoiseSpec noise;
};

/// Built-in simulation models: "et", "eet" and "mix" (analogues of the
/// extreme.teeth, extreme.extreme.teeth and mix test signals).
Preset preset(std::string_view name);
std::vector<std::string> preset_names();

/// X_t = f_t + sigma * eps_t. Deterministic in (noise.seed, replication).
TimeSeries sample_series(const PiecewiseSignal& signal, const NoiseSpec& noise,
                         std::uint64_t replication);

struct Detectability {
  double index;
  double threshold;
  bool detectable;
};

/// sigma^-2 * min_i(delta_i * jump_i^2) against log T.
Detectability detectability_index(const PiecewiseSignal& signal, double sigma);

/// Same diagnostic from raw spacings and jump sizes; `length` may be any
/// positive real so boundary cases can be posed exactly.
Detectability detectability_index(std::span<const std::size_t> spacings,
                                  std::span<const double> jumps, double sigma, double length);

/// Throws std::invalid_argument on fewer than two values or non-finite entries.
void validate_series(std::span<const double> values);

}  // namespace mosum
