#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "mosum/baseline.hpp"
#include "mosum/path.hpp"
#include "mosum/sdll.hpp"
#include "mosum/signal.hpp"

namespace mosum {

/// One value per line with an optional single non-numeric header line.
TimeSeries read_series_csv(std::istream& in);
TimeSeries read_series_csv(const std::filesystem::path& file);
/// Writes header "x" and one value per line, round-trip precision.
void write_series_csv(std::ostream& out, const TimeSeries& series);

/// {"T":..., "changepoints":[...], "levels":[...]}
std::string signal_to_json(const PiecewiseSignal& signal);
PiecewiseSignal signal_from_json(std::string_view text);

/// [{"k":..., "importance":..., "g_l":..., "g_r":..., "iter":...}, ...]
std::string path_to_json(const SolutionPath& path);
SolutionPath path_from_json(std::string_view text);

/// {"n_hat":..., "changepoints":[...], "sigma_hat":..., "threshold":..., "path":[...]}
std::string detection_to_json(const MosumSdllResult& result, const SdllConfig& config);
std::string detection_to_json(const BaselineResult& result, const BaselineConfig& config);

/// Writes `text` to `file`, throwing std::runtime_error on failure.
void write_text_file(const std::filesystem::path& file, std::string_view text);

}  // namespace mosum
