#include "lsasim/events.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "lsasim/csv.hpp"
#include "lsasim/error.hpp"
#include "lsasim/rng.hpp"

namespace lsasim {

namespace {

std::optional<int> parse_fixed_int(std::string_view s) noexcept {
  if (s.empty()) return std::nullopt;
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool leap(int y) noexcept { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) noexcept {
  static constexpr std::array<int, 12> kDays{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && leap(y) ? 29 : kDays[static_cast<std::size_t>(m - 1)];
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::optional<CalendarDate> parse_date(std::string_view text) noexcept {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  const auto y = parse_fixed_int(text.substr(0, 4));
  const auto m = parse_fixed_int(text.substr(5, 2));
  const auto d = parse_fixed_int(text.substr(8, 2));
  if (!y || !m || !d || *m < 1 || *m > 12 || *d < 1 || *d > days_in_month(*y, *m)) {
    return std::nullopt;
  }
  return CalendarDate{*y, *m, *d};
}

std::optional<double> parse_time_of_day(std::string_view text) noexcept {
  if (text.size() != 5 && text.size() != 8) return std::nullopt;
  if (text[2] != ':' || (text.size() == 8 && text[5] != ':')) return std::nullopt;
  const auto h = parse_fixed_int(text.substr(0, 2));
  const auto m = parse_fixed_int(text.substr(3, 2));
  const auto s = text.size() == 8 ? parse_fixed_int(text.substr(6, 2)) : std::optional<int>(0);
  if (!h || !m || !s || *h > 23 || *m > 59 || *s > 59 || *h < 0 || *m < 0 || *s < 0) {
    return std::nullopt;
  }
  return *h * 60.0 + *m + *s / 60.0;
}

MonthDay parse_month_day(std::string_view text) {
  const auto t = csv::trim(text);
  if (t.size() == 5 && t[2] == '-') {
    const auto m = parse_fixed_int(t.substr(0, 2));
    const auto d = parse_fixed_int(t.substr(3, 2));
    // 2000 is a leap year, so Feb 29 is accepted.
    if (m && d && *m >= 1 && *m <= 12 && *d >= 1 && *d <= days_in_month(2000, *m)) {
      return {*m, *d};
    }
  }
  throw Error(ErrorCategory::Config, fmt::format("bad month-day '{}', expected MM-DD", text));
}

std::vector<EventLogEntry> read_event_log(std::istream& in, const std::string& source) {
  const auto table = csv::Table::parse(
      in, source, {"event_id", "date", "time", "event_type", "attending_min", "pump_count"});
  std::vector<EventLogEntry> out;
  out.reserve(table.rows().size());
  for (const auto& row : table.rows()) {
    EventLogEntry e;
    e.event_id = table.field(row, "event_id");
    const auto date = parse_date(table.field(row, "date"));
    if (!date) table.fail(row, fmt::format("bad date '{}'", table.field(row, "date")));
    e.date = *date;
    const auto time = parse_time_of_day(table.field(row, "time"));
    if (!time) table.fail(row, fmt::format("bad time '{}'", table.field(row, "time")));
    e.minute_of_day = *time;
    e.event_type = table.field(row, "event_type");
    e.attending_min = table.number(row, "attending_min");
    if (!std::isfinite(e.attending_min)) table.fail(row, "attending_min must be finite");
    e.pump_count = table.integer(row, "pump_count");
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<EventLogEntry> read_event_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::Input, fmt::format("cannot open '{}'", path.string()));
  return read_event_log(in, path.string());
}

CleanedLog clean_event_log(std::span<const EventLogEntry> entries, const CleanupConfig& config) {
  std::vector<std::string> majors;
  majors.reserve(config.major_types.size());
  for (const auto& t : config.major_types) majors.push_back(lowercase(csv::trim(t)));

  CleanedLog out;
  out.report.input_rows = entries.size();
  for (const auto& e : entries) {
    const auto type = lowercase(csv::trim(e.event_type));
    if (std::find(majors.begin(), majors.end(), type) == majors.end()) {
      ++out.report.dropped_type;
      continue;
    }
    const MonthDay md{e.date.month, e.date.day};
    if (std::find(config.excluded_dates.begin(), config.excluded_dates.end(), md) !=
        config.excluded_dates.end()) {
      ++out.report.dropped_date;
      continue;
    }
    if (e.pump_count < 1) {
      ++out.report.dropped_pumps;
      continue;
    }
    if (!(e.attending_min > 0.0)) {
      ++out.report.dropped_duration;
      continue;
    }
    out.entries.push_back(e);
  }
  out.report.retained_rows = out.entries.size();
  if (out.entries.empty()) {
    throw Error(ErrorCategory::Input,
                fmt::format("event clean-up removed all {} rows", out.report.input_rows));
  }
  return out;
}

double event_duration(std::span<const double> attending_minutes) {
  if (attending_minutes.empty()) {
    throw Error(ErrorCategory::Input, "event has no attending times");
  }
  const double sum = std::accumulate(attending_minutes.begin(), attending_minutes.end(), 0.0);
  return sum / static_cast<double>(attending_minutes.size());
}

std::vector<LoggedEvent> group_events(std::span<const EventLogEntry> entries, GroupingMode mode) {
  std::vector<LoggedEvent> out;
  if (mode == GroupingMode::PerEvent) {
    out.reserve(entries.size());
    for (const auto& e : entries) {
      out.push_back({e.event_id, e.date, e.minute_of_day, e.attending_min});
    }
    return out;
  }
  // Per-pump rows: first row of each event id fixes date and time.
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::vector<double>> times;
  for (const auto& e : entries) {
    const auto [it, inserted] = index.try_emplace(e.event_id, out.size());
    if (inserted) {
      out.push_back({e.event_id, e.date, e.minute_of_day, 0.0});
      times.emplace_back();
    }
    times[it->second].push_back(e.attending_min);
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].duration_min = event_duration(times[i]);
  return out;
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> support, std::vector<double> cdf)
    : support_(std::move(support)), cdf_(std::move(cdf)) {
  if (support_.empty() || support_.size() != cdf_.size()) {
    throw Error(ErrorCategory::Input,
                "empirical distribution needs equal, non-zero support and cdf lengths");
  }
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (!std::isfinite(support_[i]) || !(cdf_[i] >= 0.0 && cdf_[i] <= 1.0 + 1e-12)) {
      throw Error(ErrorCategory::Input, "empirical distribution has invalid entries");
    }
    if (i > 0 && !(support_[i] > support_[i - 1])) {
      throw Error(ErrorCategory::Input, "empirical support must be strictly increasing");
    }
    if (i > 0 && cdf_[i] < cdf_[i - 1]) {
      throw Error(ErrorCategory::Input, "empirical cdf must be non-decreasing");
    }
  }
  if (std::fabs(cdf_.back() - 1.0) > 1e-12) {
    throw Error(ErrorCategory::Input,
                fmt::format("empirical cdf must end at 1, ends at {}", cdf_.back()));
  }
  cdf_.back() = 1.0;
}

EmpiricalDistribution EmpiricalDistribution::from_samples(std::span<const double> samples) {
  if (samples.empty()) {
    throw Error(ErrorCategory::Input, "cannot build a distribution from zero samples");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  std::vector<double> support;
  std::vector<double> cdf;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    support.push_back(sorted[i]);
    cdf.push_back(static_cast<double>(i + 1) / n);
  }
  return {std::move(support), std::move(cdf)};
}

EmpiricalDistribution EmpiricalDistribution::from_weights(std::span<const double> support,
                                                          std::span<const double> weights) {
  if (support.size() != weights.size()) {
    throw Error(ErrorCategory::Input, "support and weights differ in length");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(ErrorCategory::Input, "weights must be non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw Error(ErrorCategory::Input, "weights sum to zero");
  std::vector<double> s;
  std::vector<double> c;
  double acc = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (weights[i] == 0.0) continue;
    acc += weights[i];
    s.push_back(support[i]);
    c.push_back(acc / total);
  }
  c.back() = 1.0;
  return {std::move(s), std::move(c)};
}

double EmpiricalDistribution::quantile(double u) const noexcept {
  const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) return support_.back();
  return support_[static_cast<std::size_t>(it - cdf_.begin())];
}

double EmpiricalDistribution::sample(Rng& rng) const { return quantile(rng.uniform_pos()); }

double EmpiricalDistribution::cdf_at(double x) const noexcept {
  const auto it = std::upper_bound(support_.begin(), support_.end(), x);
  if (it == support_.begin()) return 0.0;
  return cdf_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

double EmpiricalDistribution::mean() const noexcept {
  double m = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    m += support_[i] * (cdf_[i] - prev);
    prev = cdf_[i];
  }
  return m;
}

HourHistogram::HourHistogram(const std::array<double, 24>& p) : p_(p) {
  double acc = 0.0;
  for (std::size_t h = 0; h < p_.size(); ++h) {
    if (!(p_[h] >= 0.0)) {
      throw Error(ErrorCategory::Input, "hour probabilities must be non-negative");
    }
    acc += p_[h];
    cumulative_[h] = acc;
  }
  if (std::fabs(acc - 1.0) > 1e-12) {
    throw Error(ErrorCategory::Input,
                fmt::format("hour probabilities must sum to 1, sum to {}", acc));
  }
  cumulative_.back() = 1.0;
}

HourHistogram HourHistogram::from_counts(const std::array<double, 24>& counts) {
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorCategory::Input, "hour histogram has no events");
  std::array<double, 24> p{};
  for (std::size_t h = 0; h < p.size(); ++h) p[h] = counts[h] / total;
  return HourHistogram(p);
}

int HourHistogram::sample_hour(Rng& rng) const {
  const double u = rng.uniform_pos();
  const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
  return it == cumulative_.end() ? 23 : static_cast<int>(it - cumulative_.begin());
}

EventDistributions build_distributions(std::span<const LoggedEvent> events) {
  if (events.empty()) throw Error(ErrorCategory::Input, "no events to build distributions from");
  std::map<CalendarDate, double> per_day;
  std::array<double, 24> hour_counts{};
  std::vector<double> durations;
  durations.reserve(events.size());
  for (const auto& e : events) {
    per_day[e.date] += 1.0;
    const auto hour = std::clamp(static_cast<int>(e.minute_of_day / 60.0), 0, 23);
    hour_counts[static_cast<std::size_t>(hour)] += 1.0;
    durations.push_back(e.duration_min);
  }
  std::vector<double> daily;
  daily.reserve(per_day.size());
  for (const auto& [date, n] : per_day) daily.push_back(n);
  return {EmpiricalDistribution::from_samples(daily), HourHistogram::from_counts(hour_counts),
          EmpiricalDistribution::from_samples(durations)};
}

std::vector<EmergencyEvent> sample_day(const EventDistributions& dists, const CityExtent& city,
                                       int day_index, Rng& timing, Rng& location,
                                       std::optional<std::int64_t> forced_count) {
  const std::int64_t n = forced_count
                             ? *forced_count
                             : static_cast<std::int64_t>(std::llround(dists.daily_count.sample(timing)));
  std::vector<EmergencyEvent> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
  for (std::int64_t i = 0; i < n; ++i) {
    EmergencyEvent e;
    e.id = static_cast<int>(i);
    e.day_index = day_index;
    const int hour = dists.hours.sample_hour(timing);
    e.start_min = std::min(hour * 60.0 + 60.0 * timing.uniform(), std::nextafter(kMinutesPerDay, 0.0));
    e.duration_min = dists.duration.sample(timing);
    e.location.x_km = location.uniform(0.0, city.side_km);
    e.location.y_km = location.uniform(0.0, city.side_km);
    out.push_back(e);
  }
  return out;
}

void write_distribution_csv(std::ostream& out, const EmpiricalDistribution& dist) {
  out << "support,cdf\n";
  for (std::size_t i = 0; i < dist.support().size(); ++i) {
    out << csv::format_number(dist.support()[i]) << ',' << csv::format_number(dist.cdf()[i])
        << '\n';
  }
}

EmpiricalDistribution read_distribution_csv(std::istream& in, const std::string& source) {
  const auto table = csv::Table::parse(in, source, {"support", "cdf"});
  std::vector<double> s;
  std::vector<double> c;
  for (const auto& row : table.rows()) {
    s.push_back(table.number(row, "support"));
    c.push_back(table.number(row, "cdf"));
  }
  return {std::move(s), std::move(c)};
}

void write_hour_histogram_csv(std::ostream& out, const HourHistogram& hist) {
  out << "hour,p\n";
  for (std::size_t h = 0; h < hist.p().size(); ++h) {
    out << h << ',' << csv::format_number(hist.p()[h]) << '\n';
  }
}

HourHistogram read_hour_histogram_csv(std::istream& in, const std::string& source) {
  const auto table = csv::Table::parse(in, source, {"hour", "p"});
  std::array<double, 24> p{};
  std::array<bool, 24> seen{};
  for (const auto& row : table.rows()) {
    const auto h = table.integer(row, "hour");
    if (h < 0 || h > 23) table.fail(row, "hour out of range");
    p[static_cast<std::size_t>(h)] = table.number(row, "p");
    seen[static_cast<std::size_t>(h)] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorCategory::Input, fmt::format("{}: hour histogram is missing hours", source));
  }
  return HourHistogram(p);
}

}  // namespace lsasim
