#include <fmt/format.h>

#include <CLI11.hpp>
#include <iostream>

#include "cli/commands.hpp"
#include "lsasim/config.hpp"
#include "lsasim/error.hpp"

namespace {

constexpr int kUsageExit = 1;

}  // namespace

int main(int argc, char** argv) {
  using namespace lsasim;

  CLI::App app{"lsasim: emergency spectrum-sharing impact simulator"};
  app.set_version_flag("--version", cli::kToolVersion);
  app.require_subcommand(1);

  cli::IngestOptions ingest;
  std::string ingest_traffic;
  std::string ingest_events;
  std::string ingest_config;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse datasets into profiles and distributions");
  ingest_cmd->add_option("--traffic", ingest_traffic, "Traffic CSV (cell_id,timestamp,volume_mbps)");
  ingest_cmd->add_option("--events", ingest_events,
                         "Event log CSV (event_id,date,time,event_type,attending_min,pump_count)");
  ingest_cmd->add_option("--config", ingest_config, "Config supplying clean-up and shaping keys");
  ingest_cmd->add_option("--out", ingest.out, "Output directory")->capture_default_str();
  ingest_cmd->add_option("--peak-fraction", ingest.peak_fraction, "Scaled peak / capacity (0.95)");
  ingest_cmd->add_option("--shift-hours", ingest.shift_hours, "Industrial profile shift (14)");

  cli::RunOptions run;
  std::string run_years;
  auto* run_cmd = app.add_subcommand("run", "Run the Monte Carlo simulation");
  run_cmd->add_option("--config", run.config, "Config file")->required();
  run_cmd->add_option("--out", run.out, "Output directory")->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Override master_seed");
  run_cmd->add_option("--days", run.days, "Override n_days");
  run_cmd->add_option("--years", run_years, "Override years, e.g. 1-5 or 1,3");
  run_cmd->add_option("--workers", run.workers, "Worker threads")->capture_default_str();

  std::string export_out;
  std::string export_figures;
  auto* export_cmd = app.add_subcommand("export-figures", "Write figure data for a finished run");
  export_cmd->add_option("--out", export_out, "Run output directory")->required();
  export_cmd->add_option("--figures", export_figures, "Destination (default <out>/figures)");

  std::string validate_config;
  std::string validate_out;
  auto* validate_cmd =
      app.add_subcommand("validate", "Check a config file and/or a run directory's manifest");
  validate_cmd->add_option("--config", validate_config, "Config file to check");
  validate_cmd->add_option("--out", validate_out, "Run directory whose manifest to verify");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  try {
    if (ingest_cmd->parsed()) {
      if (!ingest_traffic.empty()) ingest.traffic = ingest_traffic;
      if (!ingest_events.empty()) ingest.events = ingest_events;
      if (!ingest_config.empty()) ingest.config = ingest_config;
      const auto report = cli::cmd_ingest(ingest);
      std::cout << cli::to_text(report);
    } else if (run_cmd->parsed()) {
      if (!run_years.empty()) run.years = parse_year_list(run_years);
      const auto manifest = cli::cmd_run(run);
      std::cout << fmt::format("wrote {} files to {}\n", manifest.outputs.size() + 1,
                               run.out.string());
    } else if (export_cmd->parsed()) {
      std::optional<std::filesystem::path> dest;
      if (!export_figures.empty()) dest = export_figures;
      for (const auto& p : cli::cmd_export_figures(export_out, dest)) {
        std::cout << p.string() << '\n';
      }
    } else if (validate_cmd->parsed()) {
      std::optional<std::filesystem::path> cfg;
      std::optional<std::filesystem::path> out;
      if (!validate_config.empty()) cfg = validate_config;
      if (!validate_out.empty()) out = validate_out;
      const auto problems = cli::cmd_validate(cfg, out);
      for (const auto& p : problems) std::cerr << "validate: " << p << '\n';
      if (!problems.empty()) return static_cast<int>(ErrorCategory::Validation);
      std::cout << "ok\n";
    }
  } catch (const Error& e) {
    std::cerr << "lsasim: " << category_name(e.category()) << " error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "lsasim: error: " << e.what() << '\n';
    return static_cast<int>(ErrorCategory::Simulation);
  }
  return 0;
}
