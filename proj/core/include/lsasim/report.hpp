#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lsasim/config.hpp"
#include "lsasim/engine.hpp"

namespace lsasim {

/// Writes every run artefact into `dir` (created if needed) and returns the
/// written file names, relative to `dir`, in a fixed order:
///   config.resolved, layout.csv, stations.csv, profiles.csv, daily_count.csv,
///   hour_histogram.csv, duration.csv, events.csv, days.csv, area_days.csv,
///   impact_by_hour.csv, summary_year_<y>.csv per simulated year.
std::vector<std::string> write_run_outputs(const std::filesystem::path& dir,
                                           const SimulationConfig& config,
                                           const RunResult& result);

/// Figure-data files produced by export_figures, in order.
[[nodiscard]] const std::vector<std::string>& figure_file_names();

/// Turns the CSVs of a run directory into gnuplot-ready data files (blocks of
/// two whitespace-separated columns, separated by two blank lines; select a
/// block with `index`). Throws Error(Input) naming a missing artefact.
std::vector<std::filesystem::path> export_figures(const std::filesystem::path& run_dir,
                                                  const std::filesystem::path& out_dir);

/// Writes `content` to `path`, throwing Error(Io) on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace lsasim
