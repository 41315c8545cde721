#include "cli/commands.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <set>
#include <sstream>

#include "lsasim/csv.hpp"
#include "lsasim/engine.hpp"
#include "lsasim/error.hpp"
#include "lsasim/report.hpp"
#include "lsasim/traffic.hpp"

namespace lsasim::cli {

std::string to_text(const IngestReport& r) {
  std::ostringstream out;
  if (r.traffic_rows > 0) {
    out << "traffic_rows_parsed = " << r.traffic_rows << '\n';
    out << "traffic_cells = " << r.traffic_cells << '\n';
    out << "residential_peak_hour = " << r.residential_peak_hour << '\n';
    out << "industrial_peak_hour = " << r.industrial_peak_hour << '\n';
  }
  if (r.cleanup.input_rows > 0) {
    out << "event_rows_parsed = " << r.cleanup.input_rows << '\n';
    out << "event_rows_dropped_type = " << r.cleanup.dropped_type << '\n';
    out << "event_rows_dropped_date = " << r.cleanup.dropped_date << '\n';
    out << "event_rows_dropped_pumps = " << r.cleanup.dropped_pumps << '\n';
    out << "event_rows_dropped_duration = " << r.cleanup.dropped_duration << '\n';
    out << "event_rows_retained = " << r.cleanup.retained_rows << '\n';
    out << "events = " << r.n_events << '\n';
    out << "days_observed = " << r.n_days << '\n';
    out << "daily_mean = " << csv::format_number(r.daily_mean) << '\n';
    out << "max_duration_min = " << csv::format_number(r.max_duration_min) << '\n';
    std::vector<std::string> p;
    for (double v : r.severity_p) p.push_back(csv::format_number(v));
    out << "severity_class_probabilities = " << fmt::format("{}", fmt::join(p, ",")) << '\n';
    out << "expected_cells_per_event = " << csv::format_number(r.expected_cells) << '\n';
  }
  return out.str();
}

IngestReport cmd_ingest(const IngestOptions& options) {
  if (!options.traffic && !options.events) {
    throw Error(ErrorCategory::Config, "ingest needs --traffic and/or --events");
  }
  SimulationConfig config = options.config ? load_config(*options.config) : SimulationConfig{};
  if (options.peak_fraction) config.peak_fraction = *options.peak_fraction;
  if (options.shift_hours) config.shift_hours = *options.shift_hours;

  std::error_code ec;
  std::filesystem::create_directories(options.out, ec);
  if (ec) {
    throw Error(ErrorCategory::Io,
                fmt::format("cannot create '{}': {}", options.out.string(), ec.message()));
  }

  IngestReport report;
  if (options.traffic) {
    const auto records = read_traffic_csv(*options.traffic);
    std::set<std::string> cells;
    for (const auto& r : records) cells.insert(r.cell_id);
    report.traffic_rows = records.size();
    report.traffic_cells = cells.size();
    const auto profiles = profiles_for_layout(build_hourly_profile(records), config.traffic());
    report.residential_peak_hour = peak_hour(profiles.residential.values);
    report.industrial_peak_hour = peak_hour(profiles.industrial.values);
    std::ostringstream o;
    write_profiles_csv(o, profiles);
    write_text_file(options.out / "profiles.csv", o.str());
  }
  if (options.events) {
    const auto entries = read_event_log(*options.events);
    const auto cleaned = clean_event_log(entries, config.cleanup);
    const auto events = group_events(cleaned.entries, config.grouping);
    const auto dists = build_distributions(events);
    report.cleanup = cleaned.report;
    report.n_events = events.size();
    std::set<CalendarDate> days;
    for (const auto& e : events) days.insert(e.date);
    report.n_days = days.size();
    report.daily_mean = dists.daily_count.mean();
    report.max_duration_min = dists.duration.max();
    const auto weights = severity_weights(dists.duration, config.policy);
    report.severity_p = weights.p;
    report.expected_cells = weights.expected_cells;

    std::ostringstream daily;
    write_distribution_csv(daily, dists.daily_count);
    write_text_file(options.out / "daily_count.csv", daily.str());
    std::ostringstream hours;
    write_hour_histogram_csv(hours, dists.hours);
    write_text_file(options.out / "hour_histogram.csv", hours.str());
    std::ostringstream dur;
    write_distribution_csv(dur, dists.duration);
    write_text_file(options.out / "duration.csv", dur.str());
  }
  write_text_file(options.out / "ingest_report.txt", to_text(report));
  return report;
}

RunManifest cmd_run(const RunOptions& options) {
  auto config = load_config(options.config);
  if (options.seed) config.master_seed = *options.seed;
  if (options.days) config.n_days = *options.days;
  if (options.years) config.years = *options.years;
  validate_config(config);

  const auto result = run(config, options.workers);
  const auto names = write_run_outputs(options.out, config, result);

  RunManifest m;
  m.tool_version = kToolVersion;
  m.timestamp = current_timestamp();
  m.master_seed = config.master_seed;
  const auto input = [](const std::string& source) -> std::pair<std::string, std::string> {
    if (source == kSyntheticSource) return {source, "-"};
    return {source, sha256_file(source)};
  };
  m.inputs["traffic"] = input(config.traffic_source);
  m.inputs["events"] = input(config.events_source);
  for (const auto& name : names) m.outputs.emplace_back(name, sha256_file(options.out / name));
  write_text_file(options.out / "manifest.txt", to_text(m));
  return m;
}

std::vector<std::filesystem::path> cmd_export_figures(
    const std::filesystem::path& run_dir, const std::optional<std::filesystem::path>& figures_dir) {
  return export_figures(run_dir, figures_dir.value_or(run_dir / "figures"));
}

std::vector<std::string> cmd_validate(const std::optional<std::filesystem::path>& config,
                                      const std::optional<std::filesystem::path>& run_dir) {
  if (!config && !run_dir) {
    throw Error(ErrorCategory::Config, "validate needs --config and/or --out");
  }
  std::vector<std::string> problems;
  if (config) {
    try {
      (void)load_config(*config);
    } catch (const Error& e) {
      problems.emplace_back(e.what());
    }
  }
  if (run_dir) {
    auto more = verify_manifest(*run_dir);
    problems.insert(problems.end(), more.begin(), more.end());
  }
  return problems;
}

}  // namespace lsasim::cli
