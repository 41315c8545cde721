#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lsasim/events.hpp"
#include "lsasim/geometry.hpp"
#include "lsasim/impact.hpp"
#include "lsasim/spatial.hpp"
#include "lsasim/traffic.hpp"

namespace lsasim {

/// Value of traffic_source / events_source selecting the built-in calibrated data.
inline constexpr std::string_view kSyntheticSource = "synthetic";

struct SimulationConfig {
  std::uint64_t master_seed = 0;
  int n_days = 365;
  std::vector<int> years{1, 2, 3, 4, 5};

  CityExtent extent;
  PlacementOptions placement;
  PppConfig ppp;
  CellParams cell;
  double peak_fraction = 0.95;
  int shift_hours = 14;
  SharedAccessPolicy policy;

  std::string traffic_source{kSyntheticSource};
  std::string events_source{kSyntheticSource};
  GroupingMode grouping = GroupingMode::PerEvent;
  CleanupConfig cleanup;
  std::optional<std::int64_t> daily_count_override;

  [[nodiscard]] TrafficConfig traffic() const noexcept {
    return {cell.max_capacity_mbps, peak_fraction, shift_hours};
  }
};

/// Keys that must appear in every config file.
[[nodiscard]] const std::vector<std::string_view>& required_config_keys();
/// Every recognised key, in canonical order.
[[nodiscard]] const std::vector<std::string_view>& config_keys();

/// Parses "key = value" lines ('#' starts a comment). Unknown, duplicate or
/// missing required keys are Error(Config) naming the key. Relative source
/// paths are resolved against `base_dir`.
[[nodiscard]] SimulationConfig parse_config(std::istream& in, const std::string& source,
                                            const std::filesystem::path& base_dir);
[[nodiscard]] SimulationConfig load_config(const std::filesystem::path& path);

/// Throws Error(Config) on the first invalid field.
void validate_config(const SimulationConfig& config);

/// Canonical text form with every key; parse_config(to_text(c)) == c.
[[nodiscard]] std::string to_text(const SimulationConfig& config);

/// "1,2,5" or "1-5" (mixable: "1-3,5").
[[nodiscard]] std::vector<int> parse_year_list(std::string_view text);

}  // namespace lsasim
