#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "lsasim/config.hpp"
#include "lsasim/events.hpp"
#include "lsasim/impact.hpp"

namespace lsasim {

/// Areas with deployment_year <= year, in deployment order. Years past the
/// end of the rollout return every area.
[[nodiscard]] std::vector<AreaSpec> deployed_areas(const CityLayout& layout, int year);

/// Ingestion outcome for an event log.
struct EventIngest {
  EventDistributions distributions;
  CleanupReport cleanup;
  std::size_t n_events = 0;
};

[[nodiscard]] DayProfile load_raw_traffic(const std::string& source);
[[nodiscard]] EventIngest load_events(const std::string& source, GroupingMode grouping,
                                      const CleanupConfig& cleanup);

/// Everything held fixed across the simulated days of a run.
struct Scenario {
  NetworkState network;
  EventDistributions distributions;
};

/// Loads the traffic and event sources, places the areas and the stations.
/// Layout and stations come from streams keyed on master_seed only, so all
/// years of a run share one rollout.
[[nodiscard]] Scenario build_scenario(const SimulationConfig& config);

struct AreaDay {
  int area_id = 0;
  std::size_t n_events = 0;
  double impact_mbps_h = 0.0;
  double system_impact_fraction = 0.0;
};

struct DayResult {
  int year = 0;
  int day = 0;
  std::vector<ImpactRecord> records;
  std::vector<AreaDay> areas;  // one per deployed area, deployment order
  std::size_t n_covered = 0;
  /// Unserved traffic over all deployed areas / their combined daily capacity.
  double total_impact_fraction = 0.0;
};

/// Samples and assesses one day. Randomness comes only from streams keyed on
/// (master_seed, year, day), so the result does not depend on which thread
/// runs it or in what order.
[[nodiscard]] DayResult simulate_day(const Scenario& scenario, const SimulationConfig& config,
                                     int year, int day);

struct AreaSummary {
  int area_id = 0;
  AreaKind kind = AreaKind::Residential;
  std::size_t n_stations = 0;
  std::size_t n_events = 0;
  double sum_event_system_impact = 0.0;
  double sum_event_cell_impact_mbps_h = 0.0;
  std::vector<double> daily_fraction;  // day order

  [[nodiscard]] double mean_event_system_impact() const noexcept;
  [[nodiscard]] double mean_daily_fraction() const noexcept;
};

struct HourBin {
  std::size_t n_events = 0;
  double sum_cell_impact_mbps_h = 0.0;
  double sum_system_impact = 0.0;
};

struct YearSummary {
  int year = 0;
  std::vector<double> daily_total_fraction;  // day order
  std::vector<AreaSummary> areas;            // deployed areas, deployment order
  std::array<HourBin, 24> industrial_by_hour{};
  std::array<HourBin, 24> residential_by_hour{};
  std::size_t total_events = 0;
  std::size_t covered_events = 0;
  std::size_t uncovered_events = 0;

  [[nodiscard]] double mean_daily_total_fraction() const noexcept;
  [[nodiscard]] EmpiricalDistribution daily_total_cdf() const;
  /// Event-weighted mean of per-event system impact over areas of `kind`;
  /// 0 when no such event occurred.
  [[nodiscard]] double mean_event_system_impact(AreaKind kind) const noexcept;
};

/// Aggregates the days of one year. `days` must all carry `year`.
[[nodiscard]] YearSummary summarize(int year, std::span<const DayResult> days,
                                    const Scenario& scenario);

struct RunResult {
  Scenario scenario;
  std::vector<YearSummary> years;
  std::vector<DayResult> days;  // by year (config order), then day
};

/// Full Monte Carlo run. `workers` threads simulate days concurrently; the
/// output is identical for any worker count. A failing day aborts the run
/// with Error(Simulation) naming the year and day.
[[nodiscard]] RunResult run(const SimulationConfig& config, unsigned workers = 1);

}  // namespace lsasim
