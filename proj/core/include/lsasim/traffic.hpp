#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lsasim/geometry.hpp"

namespace lsasim {

inline constexpr int kHoursPerDay = 24;

/// 24 values indexed by hour of day.
using DayProfile = std::array<double, kHoursPerDay>;

struct TrafficRecord {
  std::string cell_id;
  std::string timestamp;
  int hour_of_day = 0;
  double volume_mbps = 0.0;
};

/// Commercial downlink demand of one cell across the day, in Mbps.
struct HourlyProfile {
  AreaKind kind = AreaKind::Residential;
  DayProfile values{};
};

struct TrafficConfig {
  double max_capacity_mbps = 2660.0;
  double peak_fraction = 0.95;
  int shift_hours = 14;
};

struct ProfileSet {
  HourlyProfile industrial{AreaKind::Industrial, {}};
  HourlyProfile residential{AreaKind::Residential, {}};

  [[nodiscard]] const HourlyProfile& for_kind(AreaKind kind) const noexcept {
    return kind == AreaKind::Industrial ? industrial : residential;
  }
};

/// Hour of day from an ISO 8601 timestamp with at least hour precision
/// ("2018-10-23T14", "2018-10-23T14:00", "2018-10-23 14:00:00").
/// Returns -1 when the text is not of that shape.
[[nodiscard]] int parse_timestamp_hour(std::string_view timestamp) noexcept;

/// Reads a traffic CSV with columns cell_id, timestamp, volume_mbps.
[[nodiscard]] std::vector<TrafficRecord> read_traffic_csv(std::istream& in,
                                                          const std::string& source);
[[nodiscard]] std::vector<TrafficRecord> read_traffic_csv(const std::filesystem::path& path);

/// Mean volume per hour of day over every record. Throws Error(Input)
/// listing the hours that have no records.
[[nodiscard]] DayProfile build_hourly_profile(std::span<const TrafficRecord> records);

/// Rescales so the peak equals peak_fraction * max_capacity_mbps.
[[nodiscard]] DayProfile scale_to_peak(const DayProfile& raw, double max_capacity_mbps,
                                       double peak_fraction);

/// out[h] = in[(h - shift) mod 24].
[[nodiscard]] DayProfile circular_shift(const DayProfile& profile, int shift_hours) noexcept;

/// Residential: scaled raw profile. Industrial: the same, shifted by shift_hours.
[[nodiscard]] ProfileSet profiles_for_layout(const DayProfile& raw, const TrafficConfig& config);

[[nodiscard]] int peak_hour(const DayProfile& profile) noexcept;

void write_profiles_csv(std::ostream& out, const ProfileSet& profiles);
[[nodiscard]] ProfileSet read_profiles_csv(std::istream& in, const std::string& source);

}  // namespace lsasim
