#include "lsasim/engine.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "lsasim/error.hpp"
#include "lsasim/rng.hpp"
#include "lsasim/synthetic.hpp"

namespace lsasim {

namespace {

// Stream purposes for derive_seed.
constexpr std::uint64_t kLayoutStream = 1;
constexpr std::uint64_t kStationStream = 2;
constexpr std::uint64_t kTimingStream = 3;
constexpr std::uint64_t kLocationStream = 4;

}  // namespace

std::vector<AreaSpec> deployed_areas(const CityLayout& layout, int year) {
  std::vector<AreaSpec> out;
  for (const auto& a : layout.areas) {
    if (a.deployment_year <= year) out.push_back(a);
  }
  std::stable_sort(out.begin(), out.end(), [](const AreaSpec& a, const AreaSpec& b) {
    return a.deployment_year < b.deployment_year;
  });
  return out;
}

DayProfile load_raw_traffic(const std::string& source) {
  if (source == kSyntheticSource) return synthetic::raw_traffic();
  const auto records = read_traffic_csv(std::filesystem::path(source));
  return build_hourly_profile(records);
}

EventIngest load_events(const std::string& source, GroupingMode grouping,
                        const CleanupConfig& cleanup) {
  if (source == kSyntheticSource) {
    return {synthetic::distributions(), {}, 0};
  }
  const auto entries = read_event_log(std::filesystem::path(source));
  auto cleaned = clean_event_log(entries, cleanup);
  const auto events = group_events(cleaned.entries, grouping);
  return {build_distributions(events), cleaned.report, events.size()};
}

Scenario build_scenario(const SimulationConfig& config) {
  validate_config(config);
  const auto raw = load_raw_traffic(config.traffic_source);
  auto ingest = load_events(config.events_source, config.grouping, config.cleanup);

  Rng layout_rng(derive_seed(config.master_seed, {kLayoutStream}));
  auto layout = place_areas(config.extent, config.placement, layout_rng);
  Rng station_rng(derive_seed(config.master_seed, {kStationStream}));
  auto stations = deploy_stations(layout, config.ppp, config.cell, station_rng);

  return Scenario{
      NetworkState{std::move(layout), std::move(stations),
                   profiles_for_layout(raw, config.traffic()), config.cell.max_capacity_mbps},
      std::move(ingest.distributions)};
}

DayResult simulate_day(const Scenario& scenario, const SimulationConfig& config, int year,
                       int day) {
  const auto y = static_cast<std::uint64_t>(year);
  const auto d = static_cast<std::uint64_t>(day);
  Rng timing(derive_seed(config.master_seed, {kTimingStream, y, d}));
  Rng location(derive_seed(config.master_seed, {kLocationStream, y, d}));
  const auto& net = scenario.network;
  const auto events = sample_day(scenario.distributions, net.layout.extent, day, timing, location,
                                 config.daily_count_override);

  DayResult out;
  out.year = year;
  out.day = day;
  out.records.reserve(events.size());
  for (const auto& e : events) {
    out.records.push_back(assess_event(e, net, year, config.policy));
    if (out.records.back().covered) ++out.n_covered;
  }

  double energy = 0.0;
  double capacity = 0.0;
  std::vector<ImpactRecord> in_area;
  for (const auto& area : deployed_areas(net.layout, year)) {
    in_area.clear();
    for (const auto& r : out.records) {
      if (r.covered && r.area_id == area.id) in_area.push_back(r);
    }
    const auto n_cells = net.stations.count(area.id);
    AreaDay ad;
    ad.area_id = area.id;
    ad.n_events = in_area.size();
    ad.impact_mbps_h = area_impact_mbps_h(in_area, net.profiles.for_kind(area.kind).values,
                                          config.policy, net.max_capacity_mbps);
    const double area_capacity =
        static_cast<double>(n_cells) * net.max_capacity_mbps * kHoursPerDay;
    ad.system_impact_fraction = area_capacity > 0.0 ? ad.impact_mbps_h / area_capacity : 0.0;
    energy += ad.impact_mbps_h;
    capacity += area_capacity;
    out.areas.push_back(ad);
  }
  out.total_impact_fraction = capacity > 0.0 ? energy / capacity : 0.0;
  return out;
}

double AreaSummary::mean_event_system_impact() const noexcept {
  return n_events == 0 ? 0.0 : sum_event_system_impact / static_cast<double>(n_events);
}

double AreaSummary::mean_daily_fraction() const noexcept {
  if (daily_fraction.empty()) return 0.0;
  double s = 0.0;
  for (double v : daily_fraction) s += v;
  return s / static_cast<double>(daily_fraction.size());
}

double YearSummary::mean_daily_total_fraction() const noexcept {
  if (daily_total_fraction.empty()) return 0.0;
  double s = 0.0;
  for (double v : daily_total_fraction) s += v;
  return s / static_cast<double>(daily_total_fraction.size());
}

EmpiricalDistribution YearSummary::daily_total_cdf() const {
  return EmpiricalDistribution::from_samples(daily_total_fraction);
}

double YearSummary::mean_event_system_impact(AreaKind kind) const noexcept {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& a : areas) {
    if (a.kind != kind) continue;
    sum += a.sum_event_system_impact;
    n += a.n_events;
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

YearSummary summarize(int year, std::span<const DayResult> days, const Scenario& scenario) {
  const auto& net = scenario.network;
  YearSummary s;
  s.year = year;
  for (const auto& area : deployed_areas(net.layout, year)) {
    AreaSummary a;
    a.area_id = area.id;
    a.kind = area.kind;
    a.n_stations = net.stations.count(area.id);
    s.areas.push_back(a);
  }
  const auto area_index = [&](int id) -> AreaSummary& {
    for (auto& a : s.areas) {
      if (a.area_id == id) return a;
    }
    throw Error(ErrorCategory::Simulation, fmt::format("record for undeployed area {}", id));
  };

  s.daily_total_fraction.reserve(days.size());
  for (const auto& day : days) {
    if (day.year != year) {
      throw Error(ErrorCategory::Simulation,
                  fmt::format("day {} belongs to year {}, not {}", day.day, day.year, year));
    }
    s.daily_total_fraction.push_back(day.total_impact_fraction);
    for (const auto& ad : day.areas) area_index(ad.area_id).daily_fraction.push_back(ad.system_impact_fraction);
    for (const auto& r : day.records) {
      ++s.total_events;
      if (!r.covered) {
        ++s.uncovered_events;
        continue;
      }
      ++s.covered_events;
      auto& a = area_index(r.area_id);
      ++a.n_events;
      a.sum_event_system_impact += r.system_impact_fraction;
      a.sum_event_cell_impact_mbps_h += r.cell_impact_mbps_h;
      const auto hour = static_cast<std::size_t>(std::clamp(static_cast<int>(r.event.start_min / 60.0), 0, 23));
      auto& bin = r.area_kind == AreaKind::Industrial ? s.industrial_by_hour[hour]
                                                      : s.residential_by_hour[hour];
      ++bin.n_events;
      bin.sum_cell_impact_mbps_h += r.cell_impact_mbps_h;
      bin.sum_system_impact += r.system_impact_fraction;
    }
  }
  return s;
}

RunResult run(const SimulationConfig& config, unsigned workers) {
  RunResult result{build_scenario(config), {}, {}};
  workers = std::max(1u, workers);
  const auto n_days = static_cast<std::size_t>(config.n_days);

  for (int year : config.years) {
    std::vector<DayResult> days(n_days);
    std::vector<std::exception_ptr> errors(n_days);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};

    const auto work = [&] {
      for (;;) {
        const auto d = next.fetch_add(1);
        if (d >= n_days || failed.load()) return;
        try {
          days[d] = simulate_day(result.scenario, config, year, static_cast<int>(d));
        } catch (...) {
          errors[d] = std::current_exception();
          failed.store(true);
        }
      }
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      const auto n_threads = std::min<std::size_t>(workers, n_days);
      pool.reserve(n_threads);
      for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(work);
    }

    for (std::size_t d = 0; d < n_days; ++d) {
      if (!errors[d]) continue;
      try {
        std::rethrow_exception(errors[d]);
      } catch (const std::exception& e) {
        throw Error(ErrorCategory::Simulation,
                    fmt::format("year {} day {}: {}", year, d, e.what()));
      }
    }

    result.years.push_back(summarize(year, days, result.scenario));
    for (auto& d : days) result.days.push_back(std::move(d));
  }
  return result;
}

}  // namespace lsasim
