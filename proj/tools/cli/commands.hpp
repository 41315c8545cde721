#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cli/manifest.hpp"
#include "lsasim/config.hpp"
#include "lsasim/events.hpp"

namespace lsasim::cli {

inline constexpr const char* kToolVersion = "0.3.0";

struct IngestOptions {
  std::optional<std::filesystem::path> traffic;
  std::optional<std::filesystem::path> events;
  std::filesystem::path out = "ingest_out";
  /// Clean-up rules, grouping mode, capacity and profile shaping come from
  /// here when given; built-in defaults otherwise.
  std::optional<std::filesystem::path> config;
  std::optional<double> peak_fraction;
  std::optional<int> shift_hours;
};

struct IngestReport {
  std::size_t traffic_rows = 0;
  std::size_t traffic_cells = 0;
  int residential_peak_hour = -1;
  int industrial_peak_hour = -1;
  CleanupReport cleanup;
  std::size_t n_events = 0;
  std::size_t n_days = 0;
  double daily_mean = 0.0;
  double max_duration_min = 0.0;
  std::vector<double> severity_p;
  double expected_cells = 0.0;
};

[[nodiscard]] std::string to_text(const IngestReport& report);

/// Parses the given datasets and writes profiles.csv, daily_count.csv,
/// hour_histogram.csv, duration.csv and ingest_report.txt into `out`.
IngestReport cmd_ingest(const IngestOptions& options);

struct RunOptions {
  std::filesystem::path config;
  std::filesystem::path out = "run_out";
  std::optional<std::uint64_t> seed;
  std::optional<int> days;
  std::optional<std::vector<int>> years;
  unsigned workers = 1;
};

/// Loads the config, applies flag overrides, runs the engine and writes all
/// outputs plus manifest.txt into `out`.
RunManifest cmd_run(const RunOptions& options);

/// Writes the figure-data files for a finished run. Defaults to <run_dir>/figures.
std::vector<std::filesystem::path> cmd_export_figures(
    const std::filesystem::path& run_dir,
    const std::optional<std::filesystem::path>& figures_dir = {});

/// Checks a config file and/or a run directory's manifest. Returns problems found.
std::vector<std::string> cmd_validate(const std::optional<std::filesystem::path>& config,
                                      const std::optional<std::filesystem::path>& run_dir);

}  // namespace lsasim::cli
