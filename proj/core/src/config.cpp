#include "lsasim/config.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "lsasim/csv.hpp"
#include "lsasim/error.hpp"

namespace lsasim {

namespace {

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
  throw Error(ErrorCategory::Config, fmt::format("config key '{}': {} (got '{}')", key, why, value));
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T v{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
    bad_value(key, value, "not a number");
  }
  return v;
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  for (auto& f : csv::split_line(value)) {
    if (!f.empty()) out.push_back(std::move(f));
  }
  return out;
}

std::string format_month_day(const MonthDay& md) { return fmt::format("{:02d}-{:02d}", md.month, md.day); }

using Setter = std::function<void(SimulationConfig&, std::string_view key, std::string_view value,
                                  const std::filesystem::path& base)>;
using Getter = std::function<std::string(const SimulationConfig&)>;

struct KeySpec {
  std::string_view key;
  bool required;
  Setter set;
  Getter get;
};

std::string resolve_source(std::string_view value, const std::filesystem::path& base) {
  if (value == kSyntheticSource) return std::string(value);
  std::filesystem::path p(value);
  if (p.is_relative()) p = base / p;
  return p.lexically_normal().string();
}

#define LSASIM_DOUBLE(name, field)                                                        \
  KeySpec {                                                                               \
    name, false,                                                                          \
        [](SimulationConfig& c, std::string_view k, std::string_view v,                   \
           const std::filesystem::path&) { c.field = parse_number<double>(k, v); },        \
        [](const SimulationConfig& c) { return csv::format_number(c.field); }             \
  }

const std::vector<KeySpec>& key_specs() {
  static const std::vector<KeySpec> specs = {
      {"master_seed", true,
       [](SimulationConfig& c, std::string_view k, std::string_view v, const auto&) {
         c.master_seed = parse_number<std::uint64_t>(k, v);
       },
       [](const SimulationConfig& c) { return std::to_string(c.master_seed); }},
      {"n_days", true,
       [](SimulationConfig& c, std::string_view k, std::string_view v, const auto&) {
         c.n_days = parse_number<int>(k, v);
       },
       [](const SimulationConfig& c) { return std::to_string(c.n_days); }},
      {"years", true,
       [](SimulationConfig& c, std::string_view, std::string_view v, const auto&) {
         c.years = parse_year_list(v);
       },
       [](const SimulationConfig& c) { return fmt::format("{}", fmt::join(c.years, ",")); }},
      {"traffic_source", true,
       [](SimulationConfig& c, std::string_view, std::string_view v, const auto& base) {
         c.traffic_source = resolve_source(v, base);
       },
       [](const SimulationConfig& c) { return c.traffic_source; }},
      {"events_source", true,
       [](SimulationConfig& c, std::string_view, std::string_view v, const auto& base) {
         c.events_source = resolve_source(v, base);
       },
       [](const SimulationConfig& c) { return c.events_source; }},
      {"event_grouping", false,
       [](SimulationConfig& c, std::string_view k, std::string_view v, const auto&) {
         if (v == "per_event") {
           c.grouping = GroupingMode::PerEvent;
         } else if (v == "per_pump") {
           c.grouping = GroupingMode::PerPump;
         } else {
           bad_value(k, v, "expected per_event or per_pump");
         }
       },
       [](const SimulationConfig& c) {
         return std::string(c.grouping == GroupingMode::PerEvent ? "per_event" : "per_pump");
       }},
      {"major_types", false,
       [](SimulationConfig& c, std::string_view, std::string_view v, const auto&) {
         c.cleanup.major_types = split_list(v);
       },
       [](const SimulationConfig& c) {
         return fmt::format("{}", fmt::join(c.cleanup.major_types, ","));
       }},
      {"excluded_dates", false,
       [](SimulationConfig& c, std::string_view, std::string_view v, const auto&) {
         c.cleanup.excluded_dates.clear();
         for (const auto& item : split_list(v)) {
           c.cleanup.excluded_dates.push_back(parse_month_day(item));
         }
       },
       [](const SimulationConfig& c) {
         std::vector<std::string> parts;
         for (const auto& md : c.cleanup.excluded_dates) parts.push_back(format_month_day(md));
         return fmt::format("{}", fmt::join(parts, ","));
       }},
      {"daily_count_override", false,
       [](SimulationConfig& c, std::string_view k, std::string_view v, const auto&) {
         if (v == "none") {
           c.daily_count_override.reset();
         } else {
           c.daily_count_override = parse_number<std::int64_t>(k, v);
         }
       },
       [](const SimulationConfig& c) {
         return c.daily_count_override ? std::to_string(*c.daily_count_override)
                                       : std::string("none");
       }},
      LSASIM_DOUBLE("city_side_km", extent.side_km),
      LSASIM_DOUBLE("area_side_km", placement.area_side_km),
      {"n_residential", false,
       [](SimulationConfig& c, std::string_view k, std::string_view v, const auto&) {
         c.placement.n_residential = parse_number<int>(k, v);
       },
       [](const SimulationConfig& c) { return std::to_string(c.placement.n_residential); }},
      LSASIM_DOUBLE("max_overlap", placement.max_overlap),
      {"max_placement_attempts", false,
       [](SimulationConfig& c, std::string_view k, std::string_view v, const auto&) {
         c.placement.max_attempts = parse_number<std::int64_t>(k, v);
       },
       [](const SimulationConfig& c) { return std::to_string(c.placement.max_attempts); }},
      {"ppp_mode", false,
       [](SimulationConfig& c, std::string_view k, std::string_view v, const auto&) {
         if (v == "mean_count") {
           c.ppp.mode = PppMode::MeanCount;
         } else if (v == "intensity") {
           c.ppp.mode = PppMode::Intensity;
         } else {
           bad_value(k, v, "expected mean_count or intensity");
         }
       },
       [](const SimulationConfig& c) {
         return std::string(c.ppp.mode == PppMode::MeanCount ? "mean_count" : "intensity");
       }},
      LSASIM_DOUBLE("mean_count_ia", ppp.mean_count_ia),
      LSASIM_DOUBLE("mean_count_ra", ppp.mean_count_ra),
      LSASIM_DOUBLE("intensity_ia", ppp.intensity_ia),
      LSASIM_DOUBLE("intensity_ra", ppp.intensity_ra),
      LSASIM_DOUBLE("bandwidth_mhz", cell.bandwidth_mhz),
      LSASIM_DOUBLE("max_capacity_mbps", cell.max_capacity_mbps),
      LSASIM_DOUBLE("peak_fraction", peak_fraction),
      {"shift_hours", false,
       [](SimulationConfig& c, std::string_view k, std::string_view v, const auto&) {
         c.shift_hours = parse_number<int>(k, v);
       },
       [](const SimulationConfig& c) { return std::to_string(c.shift_hours); }},
      LSASIM_DOUBLE("emergency_fraction", policy.emergency_fraction),
      LSASIM_DOUBLE("impact_threshold", policy.impact_threshold),
      {"severity_classes", false,
       [](SimulationConfig& c, std::string_view k, std::string_view v, const auto&) {
         c.policy.severity_classes = parse_number<int>(k, v);
       },
       [](const SimulationConfig& c) { return std::to_string(c.policy.severity_classes); }},
      LSASIM_DOUBLE("max_duration_min", policy.max_duration_min),
  };
  return specs;
}

#undef LSASIM_DOUBLE

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = [] {
    std::vector<std::string_view> k;
    for (const auto& s : key_specs()) k.push_back(s.key);
    return k;
  }();
  return keys;
}

const std::vector<std::string_view>& required_config_keys() {
  static const std::vector<std::string_view> keys = [] {
    std::vector<std::string_view> k;
    for (const auto& s : key_specs()) {
      if (s.required) k.push_back(s.key);
    }
    return k;
  }();
  return keys;
}

std::vector<int> parse_year_list(std::string_view text) {
  std::vector<int> years;
  for (const auto& item : split_list(text)) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      years.push_back(parse_number<int>("years", item));
      continue;
    }
    const int lo = parse_number<int>("years", csv::trim(std::string_view(item).substr(0, dash)));
    const int hi = parse_number<int>("years", csv::trim(std::string_view(item).substr(dash + 1)));
    if (hi < lo) bad_value("years", item, "descending range");
    for (int y = lo; y <= hi; ++y) years.push_back(y);
  }
  if (years.empty()) bad_value("years", text, "empty year list");
  return years;
}

SimulationConfig parse_config(std::istream& in, const std::string& source,
                              const std::filesystem::path& base_dir) {
  std::map<std::string, std::pair<std::string, std::size_t>> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const auto body = csv::trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCategory::Config,
                  fmt::format("{}:{}: expected 'key = value'", source, line_no));
    }
    std::string key(csv::trim(body.substr(0, eq)));
    std::string value(csv::trim(body.substr(eq + 1)));
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw Error(ErrorCategory::Config,
                  fmt::format("{}:{}: unknown config key '{}'", source, line_no, key));
    }
    if (!values.emplace(key, std::make_pair(value, line_no)).second) {
      throw Error(ErrorCategory::Config,
                  fmt::format("{}:{}: duplicate config key '{}'", source, line_no, key));
    }
  }
  for (auto key : required_config_keys()) {
    if (!values.contains(std::string(key))) {
      throw Error(ErrorCategory::Config,
                  fmt::format("{}: missing required config key '{}'", source, key));
    }
  }

  SimulationConfig c;
  for (const auto& spec : key_specs()) {
    const auto it = values.find(std::string(spec.key));
    if (it != values.end()) spec.set(c, spec.key, it->second.first, base_dir);
  }

  // The threshold is 1 - emergency_fraction unless both are given.
  const bool has_fraction = values.contains("emergency_fraction");
  const bool has_threshold = values.contains("impact_threshold");
  if (has_fraction && !has_threshold) {
    c.policy.impact_threshold = 1.0 - c.policy.emergency_fraction;
  } else if (has_threshold && !has_fraction) {
    c.policy.emergency_fraction = 1.0 - c.policy.impact_threshold;
  } else if (has_fraction && has_threshold &&
             std::fabs(c.policy.emergency_fraction + c.policy.impact_threshold - 1.0) > 1e-12) {
    throw Error(ErrorCategory::Config,
                fmt::format("{}: impact_threshold ({}) must equal 1 - emergency_fraction ({})",
                            source, c.policy.impact_threshold, c.policy.emergency_fraction));
  }
  validate_config(c);
  return c;
}

SimulationConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCategory::Config, fmt::format("cannot open config '{}'", path.string()));
  }
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  return parse_config(in, path.string(), std::filesystem::absolute(base));
}

void validate_config(const SimulationConfig& c) {
  const auto fail = [](const std::string& msg) { throw Error(ErrorCategory::Config, msg); };
  if (c.n_days < 1) fail("n_days must be >= 1");
  if (c.years.empty()) fail("years must not be empty");
  for (int y : c.years) {
    if (y < 1 || y > 5) fail(fmt::format("year {} outside the rollout range 1..5", y));
  }
  if (std::set<int>(c.years.begin(), c.years.end()).size() != c.years.size()) {
    fail("years must not repeat");
  }
  if (!(c.extent.side_km > 0.0)) fail("city_side_km must be positive");
  if (!(c.placement.area_side_km > 0.0)) fail("area_side_km must be positive");
  if (c.placement.n_residential < 0 || c.placement.n_residential > 4) {
    fail("n_residential must lie in 0..4");
  }
  if (!(c.placement.max_overlap >= 0.0 && c.placement.max_overlap <= 1.0)) {
    fail("max_overlap must lie in [0, 1]");
  }
  if (c.placement.max_attempts < 1) fail("max_placement_attempts must be >= 1");
  for (double v : {c.ppp.mean_count_ia, c.ppp.mean_count_ra, c.ppp.intensity_ia,
                   c.ppp.intensity_ra}) {
    if (!(v > 0.0)) fail("PPP means and intensities must be positive");
  }
  if (!(c.cell.bandwidth_mhz > 0.0)) fail("bandwidth_mhz must be positive");
  if (!(c.cell.max_capacity_mbps > 0.0)) fail("max_capacity_mbps must be positive");
  if (!(c.peak_fraction > 0.0 && c.peak_fraction <= 1.0)) fail("peak_fraction must lie in (0, 1]");
  if (c.daily_count_override && *c.daily_count_override < 0) {
    fail("daily_count_override must be non-negative");
  }
  if (c.cleanup.major_types.empty()) fail("major_types must not be empty");
  c.policy.validate();
}

std::string to_text(const SimulationConfig& c) {
  std::ostringstream out;
  for (const auto& spec : key_specs()) out << spec.key << " = " << spec.get(c) << '\n';
  return out.str();
}

}  // namespace lsasim
