#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lsasim/geometry.hpp"

namespace lsasim {

class Rng;

inline constexpr double kMinutesPerDay = 1440.0;

struct CalendarDate {
  int year = 0;
  int month = 0;
  int day = 0;
  friend auto operator<=>(const CalendarDate&, const CalendarDate&) = default;
};

/// Day-of-year pattern that recurs every year (e.g. 11-05).
struct MonthDay {
  int month = 0;
  int day = 0;
  friend bool operator==(const MonthDay&, const MonthDay&) = default;
};

/// "YYYY-MM-DD"; nullopt if malformed or not a real date.
[[nodiscard]] std::optional<CalendarDate> parse_date(std::string_view text) noexcept;
/// "HH:MM" or "HH:MM:SS" to minutes after midnight; nullopt if malformed.
[[nodiscard]] std::optional<double> parse_time_of_day(std::string_view text) noexcept;
/// "MM-DD"; throws Error(Config) if malformed.
[[nodiscard]] MonthDay parse_month_day(std::string_view text);

/// One row of the fire-service log.
struct EventLogEntry {
  std::string event_id;
  CalendarDate date;
  double minute_of_day = 0.0;
  std::string event_type;
  double attending_min = 0.0;
  std::int64_t pump_count = 0;
};

/// How rows of the event log map onto events.
enum class GroupingMode {
  PerEvent,  // one row per event; attending_min is the event duration
  PerPump,   // one row per attending pump; rows share event_id
};

struct CleanupConfig {
  std::vector<std::string> major_types{"Fire", "Flooding"};
  std::vector<MonthDay> excluded_dates{{1, 1}, {11, 5}, {12, 31}};
};

/// Row accounting for one clean-up pass. Each dropped row is charged to the
/// first rule it fails, in the order the fields are listed.
struct CleanupReport {
  std::size_t input_rows = 0;
  std::size_t dropped_type = 0;
  std::size_t dropped_date = 0;
  std::size_t dropped_pumps = 0;
  std::size_t dropped_duration = 0;
  std::size_t retained_rows = 0;
  friend bool operator==(const CleanupReport&, const CleanupReport&) = default;
};

struct CleanedLog {
  std::vector<EventLogEntry> entries;
  CleanupReport report;
};

[[nodiscard]] std::vector<EventLogEntry> read_event_log(std::istream& in,
                                                        const std::string& source);
[[nodiscard]] std::vector<EventLogEntry> read_event_log(const std::filesystem::path& path);

/// Keeps major event types only, drops the excluded calendar days, rows with
/// no attending pump and rows without a positive attending time.
/// Throws Error(Input) if nothing survives.
[[nodiscard]] CleanedLog clean_event_log(std::span<const EventLogEntry> entries,
                                         const CleanupConfig& config);

/// Duration of an event attended by several pumps working in parallel: the
/// mean of their attending times.
[[nodiscard]] double event_duration(std::span<const double> attending_minutes);

/// An event reconstructed from the log.
struct LoggedEvent {
  std::string event_id;
  CalendarDate date;
  double minute_of_day = 0.0;
  double duration_min = 0.0;
};

[[nodiscard]] std::vector<LoggedEvent> group_events(std::span<const EventLogEntry> entries,
                                                    GroupingMode mode);

/// Discrete distribution on a finite support, sampled by inverse transform.
class EmpiricalDistribution {
 public:
  /// Validates: equal non-zero lengths, strictly increasing support,
  /// non-decreasing cdf in [0, 1] whose last entry is 1 within 1e-12.
  EmpiricalDistribution(std::vector<double> support, std::vector<double> cdf);

  /// Step CDF of the samples: cdf[i] = #{x <= support[i]} / n.
  [[nodiscard]] static EmpiricalDistribution from_samples(std::span<const double> samples);
  /// Normalised CDF from non-negative weights; zero-weight points are dropped.
  [[nodiscard]] static EmpiricalDistribution from_weights(std::span<const double> support,
                                                          std::span<const double> weights);

  [[nodiscard]] const std::vector<double>& support() const noexcept { return support_; }
  [[nodiscard]] const std::vector<double>& cdf() const noexcept { return cdf_; }

  /// support[min{i : cdf[i] >= u}] for u in (0, 1].
  [[nodiscard]] double quantile(double u) const noexcept;
  [[nodiscard]] double sample(Rng& rng) const;
  /// P(X <= x).
  [[nodiscard]] double cdf_at(double x) const noexcept;
  [[nodiscard]] double mean() const noexcept;
  [[nodiscard]] double min() const noexcept { return support_.front(); }
  [[nodiscard]] double max() const noexcept { return support_.back(); }

 private:
  std::vector<double> support_;
  std::vector<double> cdf_;
};

/// Probability of an event starting in each hour of the day.
class HourHistogram {
 public:
  explicit HourHistogram(const std::array<double, 24>& p);
  [[nodiscard]] static HourHistogram from_counts(const std::array<double, 24>& counts);

  [[nodiscard]] const std::array<double, 24>& p() const noexcept { return p_; }
  [[nodiscard]] int sample_hour(Rng& rng) const;

 private:
  std::array<double, 24> p_{};
  std::array<double, 24> cumulative_{};
};

struct EventDistributions {
  EmpiricalDistribution daily_count;
  HourHistogram hours;
  EmpiricalDistribution duration;
};

/// Daily counts come from the calendar days present in the log.
[[nodiscard]] EventDistributions build_distributions(std::span<const LoggedEvent> events);

struct EmergencyEvent {
  int id = 0;
  int day_index = 0;
  double start_min = 0.0;     // minutes after midnight of day_index, [0, 1440)
  double duration_min = 0.0;
  Point location;
  int severity_class = 0;     // 0 until classified
};

/// One simulated day. Start times and durations come from `timing`, locations
/// (uniform over the whole city) from `location`, so the two are independent.
/// `forced_count` replaces the daily-count draw when set.
[[nodiscard]] std::vector<EmergencyEvent> sample_day(const EventDistributions& dists,
                                                     const CityExtent& city, int day_index,
                                                     Rng& timing, Rng& location,
                                                     std::optional<std::int64_t> forced_count = {});

void write_distribution_csv(std::ostream& out, const EmpiricalDistribution& dist);
[[nodiscard]] EmpiricalDistribution read_distribution_csv(std::istream& in,
                                                          const std::string& source);
void write_hour_histogram_csv(std::ostream& out, const HourHistogram& hist);
[[nodiscard]] HourHistogram read_hour_histogram_csv(std::istream& in, const std::string& source);

}  // namespace lsasim
