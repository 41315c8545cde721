#include "lsasim/traffic.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <ostream>

#include "lsasim/csv.hpp"
#include "lsasim/error.hpp"

namespace lsasim {

namespace {

bool digits(std::string_view s, std::size_t pos, std::size_t n) {
  if (pos + n > s.size()) return false;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

int parse_timestamp_hour(std::string_view ts) noexcept {
  // YYYY-MM-DD[T ]HH...
  if (ts.size() < 13 || !digits(ts, 0, 4) || ts[4] != '-' || !digits(ts, 5, 2) || ts[7] != '-' ||
      !digits(ts, 8, 2) || (ts[10] != 'T' && ts[10] != ' ') || !digits(ts, 11, 2)) {
    return -1;
  }
  if (ts.size() > 13 && ts[13] != ':' && ts[13] != 'Z' && ts[13] != '+' && ts[13] != '-') {
    return -1;
  }
  const int hour = (ts[11] - '0') * 10 + (ts[12] - '0');
  return hour < kHoursPerDay ? hour : -1;
}

std::vector<TrafficRecord> read_traffic_csv(std::istream& in, const std::string& source) {
  const auto table = csv::Table::parse(in, source, {"cell_id", "timestamp", "volume_mbps"});
  std::vector<TrafficRecord> out;
  out.reserve(table.rows().size());
  for (const auto& row : table.rows()) {
    TrafficRecord r;
    r.cell_id = table.field(row, "cell_id");
    r.timestamp = table.field(row, "timestamp");
    r.hour_of_day = parse_timestamp_hour(r.timestamp);
    if (r.hour_of_day < 0) {
      table.fail(row, fmt::format("bad timestamp '{}'", r.timestamp));
    }
    r.volume_mbps = table.number(row, "volume_mbps");
    if (!(r.volume_mbps >= 0.0) || !std::isfinite(r.volume_mbps)) {
      table.fail(row, fmt::format("volume_mbps must be non-negative, got {}", r.volume_mbps));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TrafficRecord> read_traffic_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::Input, fmt::format("cannot open '{}'", path.string()));
  return read_traffic_csv(in, path.string());
}

DayProfile build_hourly_profile(std::span<const TrafficRecord> records) {
  DayProfile sum{};
  std::array<std::size_t, kHoursPerDay> n{};
  for (const auto& r : records) {
    if (r.hour_of_day < 0 || r.hour_of_day >= kHoursPerDay) {
      throw Error(ErrorCategory::Input, fmt::format("record hour {} out of range", r.hour_of_day));
    }
    sum[static_cast<std::size_t>(r.hour_of_day)] += r.volume_mbps;
    ++n[static_cast<std::size_t>(r.hour_of_day)];
  }
  std::vector<int> missing;
  for (int h = 0; h < kHoursPerDay; ++h) {
    if (n[static_cast<std::size_t>(h)] == 0) missing.push_back(h);
  }
  if (!missing.empty()) {
    throw Error(ErrorCategory::Input,
                fmt::format("traffic records missing hour(s): {}", fmt::join(missing, ", ")));
  }
  DayProfile mean{};
  for (std::size_t h = 0; h < mean.size(); ++h) mean[h] = sum[h] / static_cast<double>(n[h]);
  return mean;
}

DayProfile scale_to_peak(const DayProfile& raw, double max_capacity_mbps, double peak_fraction) {
  if (!(peak_fraction > 0.0 && peak_fraction <= 1.0)) {
    throw Error(ErrorCategory::Config,
                fmt::format("peak_fraction must lie in (0, 1], got {}", peak_fraction));
  }
  if (!(max_capacity_mbps > 0.0)) {
    throw Error(ErrorCategory::Config, "max_capacity_mbps must be positive");
  }
  const double peak = *std::max_element(raw.begin(), raw.end());
  if (!(peak > 0.0)) {
    throw Error(ErrorCategory::Input, "cannot scale an all-zero traffic profile");
  }
  const double target = peak_fraction * max_capacity_mbps;
  DayProfile out{};
  for (std::size_t h = 0; h < raw.size(); ++h) {
    // The peak entry is pinned to the target so it is exact, not off by an ulp.
    out[h] = raw[h] == peak ? target : raw[h] * (target / peak);
  }
  return out;
}

DayProfile circular_shift(const DayProfile& profile, int shift_hours) noexcept {
  const int s = ((shift_hours % kHoursPerDay) + kHoursPerDay) % kHoursPerDay;
  DayProfile out{};
  for (int h = 0; h < kHoursPerDay; ++h) {
    out[static_cast<std::size_t>((h + s) % kHoursPerDay)] = profile[static_cast<std::size_t>(h)];
  }
  return out;
}

ProfileSet profiles_for_layout(const DayProfile& raw, const TrafficConfig& config) {
  ProfileSet set;
  set.residential.values = scale_to_peak(raw, config.max_capacity_mbps, config.peak_fraction);
  set.industrial.values = circular_shift(set.residential.values, config.shift_hours);
  return set;
}

int peak_hour(const DayProfile& profile) noexcept {
  return static_cast<int>(std::max_element(profile.begin(), profile.end()) - profile.begin());
}

void write_profiles_csv(std::ostream& out, const ProfileSet& profiles) {
  out << "kind,hour,mbps\n";
  for (const auto* p : {&profiles.industrial, &profiles.residential}) {
    for (int h = 0; h < kHoursPerDay; ++h) {
      out << to_string(p->kind) << ',' << h << ','
          << csv::format_number(p->values[static_cast<std::size_t>(h)]) << '\n';
    }
  }
}

ProfileSet read_profiles_csv(std::istream& in, const std::string& source) {
  const auto table = csv::Table::parse(in, source, {"kind", "hour", "mbps"});
  ProfileSet set;
  std::array<std::array<bool, kHoursPerDay>, 2> seen{};
  for (const auto& row : table.rows()) {
    const auto kind = parse_area_kind(table.field(row, "kind"));
    const auto hour = table.integer(row, "hour");
    if (hour < 0 || hour >= kHoursPerDay) table.fail(row, "hour out of range");
    const double v = table.number(row, "mbps");
    if (!(v >= 0.0)) table.fail(row, "mbps must be non-negative");
    const auto k = kind == AreaKind::Industrial ? 0u : 1u;
    seen[k][static_cast<std::size_t>(hour)] = true;
    (k == 0 ? set.industrial : set.residential).values[static_cast<std::size_t>(hour)] = v;
  }
  for (const auto& s : seen) {
    if (std::find(s.begin(), s.end(), false) != s.end()) {
      throw Error(ErrorCategory::Input, fmt::format("{}: profile is missing hours", source));
    }
  }
  return set;
}

}  // namespace lsasim
