#include "lsasim/impact.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "lsasim/csv.hpp"
#include "lsasim/error.hpp"

namespace lsasim {

void SharedAccessPolicy::validate() const {
  if (!(emergency_fraction > 0.0 && emergency_fraction < 1.0)) {
    throw Error(ErrorCategory::Config,
                fmt::format("emergency_fraction must lie in (0, 1), got {}", emergency_fraction));
  }
  if (!(impact_threshold >= 0.0 && impact_threshold <= 1.0)) {
    throw Error(ErrorCategory::Config,
                fmt::format("impact_threshold must lie in [0, 1], got {}", impact_threshold));
  }
  if (severity_classes < 1) {
    throw Error(ErrorCategory::Config, "severity_classes must be >= 1");
  }
  if (!(max_duration_min > 0.0)) {
    throw Error(ErrorCategory::Config, "max_duration_min must be positive");
  }
}

double SharedAccessPolicy::class_upper_bound(int k) const noexcept {
  return static_cast<double>(k) * (max_duration_min / static_cast<double>(severity_classes));
}

int severity_class(double duration_min, const SharedAccessPolicy& policy) {
  if (!(duration_min > 0.0)) {
    throw Error(ErrorCategory::Input,
                fmt::format("event duration must be positive, got {}", duration_min));
  }
  for (int k = 1; k < policy.severity_classes; ++k) {
    if (duration_min <= policy.class_upper_bound(k)) return k;
  }
  return policy.severity_classes;
}

SeverityWeights severity_weights(const EmpiricalDistribution& durations,
                                 const SharedAccessPolicy& policy) {
  const int classes = policy.severity_classes;
  SeverityWeights w;
  w.p.resize(static_cast<std::size_t>(classes));
  double below = 0.0;
  for (int k = 1; k <= classes; ++k) {
    const double upto = k == classes ? 1.0 : durations.cdf_at(policy.class_upper_bound(k));
    w.p[static_cast<std::size_t>(k - 1)] = upto - below;
    below = upto;
  }
  for (int k = 1; k <= classes; ++k) {
    w.expected_cells += k * w.p[static_cast<std::size_t>(k - 1)];
  }
  return w;
}

double cell_impact(const DayProfile& profile, double start_min, double duration_min,
                   const SharedAccessPolicy& policy, double max_capacity_mbps) {
  if (!(duration_min > 0.0)) return 0.0;
  const double threshold = policy.impact_threshold * max_capacity_mbps;
  DayProfile excess{};
  double daily = 0.0;
  for (std::size_t h = 0; h < excess.size(); ++h) {
    excess[h] = std::max(0.0, profile[h] - threshold);
    daily += excess[h];
  }

  double energy = 0.0;
  const double full_days = std::floor(duration_min / kMinutesPerDay);
  double remaining = duration_min - full_days * kMinutesPerDay;
  energy += full_days * daily;

  const double end = start_min + remaining;
  for (double h = std::floor(start_min / 60.0); h * 60.0 < end; h += 1.0) {
    const double lo = std::max(start_min, h * 60.0);
    const double hi = std::min(end, (h + 1.0) * 60.0);
    if (hi <= lo) continue;
    const auto slot = static_cast<std::size_t>(
        ((static_cast<long long>(h) % kHoursPerDay) + kHoursPerDay) % kHoursPerDay);
    energy += (hi - lo) / 60.0 * excess[slot];
  }
  return energy;
}

ImpactRecord assess_event(const EmergencyEvent& event, const NetworkState& network, int year,
                          const SharedAccessPolicy& policy) {
  ImpactRecord r;
  r.event = event;
  r.year = year;
  r.event.severity_class = severity_class(event.duration_min, policy);
  const AreaSpec* area = locate(network.layout, event.location, year);
  if (area == nullptr) return r;

  r.covered = true;
  r.area_id = area->id;
  r.area_kind = area->kind;
  const auto cells = network.stations.in_area(area->id);
  if (cells.empty()) {
    throw Error(ErrorCategory::Simulation,
                fmt::format("area {} has no base stations to serve event {} of day {}", area->id,
                            event.id, event.day_index));
  }
  const auto nearest = nearest_stations(cells, event.location,
                                        static_cast<std::size_t>(r.event.severity_class));
  r.affected_cell_ids.reserve(nearest.size());
  for (const auto& bs : nearest) r.affected_cell_ids.push_back(bs.id);
  r.cell_impact_mbps_h = cell_impact(network.profiles.for_kind(area->kind).values,
                                     event.start_min, event.duration_min, policy,
                                     network.max_capacity_mbps);
  r.system_impact_fraction =
      r.total_impact_mbps_h() /
      (static_cast<double>(cells.size()) * network.max_capacity_mbps * kHoursPerDay);
  return r;
}

double area_impact_mbps_h(std::span<const ImpactRecord> records, const DayProfile& profile,
                          const SharedAccessPolicy& policy, double max_capacity_mbps) {
  struct Window {
    double start;
    double end;
  };
  std::map<int, std::vector<Window>> per_cell;
  for (const auto& r : records) {
    if (!r.covered) continue;
    const Window w{r.event.start_min, r.event.start_min + r.event.duration_min};
    for (int id : r.affected_cell_ids) per_cell[id].push_back(w);
  }
  double energy = 0.0;
  for (auto& [id, windows] : per_cell) {
    std::sort(windows.begin(), windows.end(),
              [](const Window& a, const Window& b) { return a.start < b.start; });
    Window cur = windows.front();
    for (std::size_t i = 1; i <= windows.size(); ++i) {
      if (i < windows.size() && windows[i].start <= cur.end) {
        cur.end = std::max(cur.end, windows[i].end);
        continue;
      }
      energy += cell_impact(profile, cur.start, cur.end - cur.start, policy, max_capacity_mbps);
      if (i < windows.size()) cur = windows[i];
    }
  }
  return energy;
}

double system_impact(std::span<const ImpactRecord> records, std::size_t stations_in_area,
                     double max_capacity_mbps, const DayProfile& profile,
                     const SharedAccessPolicy& policy) {
  if (stations_in_area == 0) {
    throw Error(ErrorCategory::Simulation, "system impact needs at least one station in the area");
  }
  const ImpactRecord* first = nullptr;
  for (const auto& r : records) {
    if (!r.covered) continue;
    if (first == nullptr) {
      first = &r;
    } else if (r.area_id != first->area_id || r.event.day_index != first->event.day_index) {
      throw Error(ErrorCategory::Simulation,
                  "system impact records must share one area and one day");
    }
  }
  return area_impact_mbps_h(records, profile, policy, max_capacity_mbps) /
         (static_cast<double>(stations_in_area) * max_capacity_mbps * kHoursPerDay);
}

void write_impact_header(std::ostream& out) {
  out << "day,event_id,year,area_id,covered,class,n_cells,cell_impact_mbps_h,"
         "system_impact_fraction,start_min,duration_min,x_km,y_km\n";
}

void write_impact_row(std::ostream& out, const ImpactRecord& r) {
  out << r.event.day_index << ',' << r.event.id << ',' << r.year << ',' << r.area_id << ','
      << (r.covered ? 1 : 0) << ',' << r.event.severity_class << ','
      << r.affected_cell_ids.size() << ',' << csv::format_number(r.cell_impact_mbps_h) << ','
      << csv::format_number(r.system_impact_fraction) << ','
      << csv::format_number(r.event.start_min) << ',' << csv::format_number(r.event.duration_min)
      << ',' << csv::format_number(r.event.location.x_km) << ','
      << csv::format_number(r.event.location.y_km) << '\n';
}

}  // namespace lsasim
