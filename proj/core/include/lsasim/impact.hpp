#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "lsasim/events.hpp"
#include "lsasim/geometry.hpp"
#include "lsasim/spatial.hpp"
#include "lsasim/traffic.hpp"

namespace lsasim {

/// Operator-internal shared access: while an emergency link is active on a
/// cell, emergency_fraction of its bandwidth is reserved for the link and
/// commercial demand above impact_threshold x capacity goes unserved.
struct SharedAccessPolicy {
  double emergency_fraction = 0.25;
  double impact_threshold = 0.75;
  int severity_classes = 4;
  double max_duration_min = 1140.0;

  /// Throws Error(Config) on out-of-range fields. Pairing the threshold with
  /// 1 - emergency_fraction is enforced by the config loader, not here, so
  /// threshold sweeps stay possible through the API.
  void validate() const;
  /// Upper duration bound of class k (1-based), k * max_duration / K.
  [[nodiscard]] double class_upper_bound(int k) const noexcept;
};

/// Smallest k with duration <= k * max_duration / K, clamped to K.
/// Class k events take k cells.
[[nodiscard]] int severity_class(double duration_min, const SharedAccessPolicy& policy);

struct SeverityWeights {
  std::vector<double> p;  // p[k-1] = P(class k)
  double expected_cells = 0.0;
};

[[nodiscard]] SeverityWeights severity_weights(const EmpiricalDistribution& durations,
                                               const SharedAccessPolicy& policy);

/// Unserved commercial traffic on one cell while an emergency window
/// [start, start + duration) is active, in Mbps-hours:
///   sum over wall-clock hours h of  w_h * max(0, profile[h mod 24] - threshold * capacity)
/// where w_h is the fraction of hour h inside the window. Windows may wrap
/// past midnight and span several days.
[[nodiscard]] double cell_impact(const DayProfile& profile, double start_min, double duration_min,
                                 const SharedAccessPolicy& policy, double max_capacity_mbps);

/// Everything assess_event needs to know about the network.
struct NetworkState {
  CityLayout layout;
  StationMap stations;
  ProfileSet profiles;
  double max_capacity_mbps = 2660.0;
};

struct ImpactRecord {
  EmergencyEvent event;
  int year = 0;
  bool covered = false;
  int area_id = -1;
  AreaKind area_kind = AreaKind::Residential;  // meaningful only when covered
  std::vector<int> affected_cell_ids;
  double cell_impact_mbps_h = 0.0;      // per affected cell
  double system_impact_fraction = 0.0;  // event's share of its area's daily capacity

  [[nodiscard]] double total_impact_mbps_h() const noexcept {
    return cell_impact_mbps_h * static_cast<double>(affected_cell_ids.size());
  }
};

/// Maps the event to its covering area for `year` and charges the k nearest
/// cells of that area, k being the severity class. Uncovered events (drones
/// anchor on an upgraded ground cell) produce a zero record. Throws
/// Error(Simulation) if the covering area has no stations.
[[nodiscard]] ImpactRecord assess_event(const EmergencyEvent& event, const NetworkState& network,
                                        int year, const SharedAccessPolicy& policy);

/// Unserved traffic of one area over one day's records, in Mbps-hours.
/// Each cell reserves a single emergency slice, so concurrent windows on the
/// same cell are merged before integrating. Without overlaps this equals the
/// plain sum of the records' cell impacts.
[[nodiscard]] double area_impact_mbps_h(std::span<const ImpactRecord> records,
                                        const DayProfile& profile,
                                        const SharedAccessPolicy& policy,
                                        double max_capacity_mbps);

/// area_impact_mbps_h / (stations_in_area * capacity * 24 h). Records must
/// belong to one area and one day; uncovered records contribute nothing.
[[nodiscard]] double system_impact(std::span<const ImpactRecord> records,
                                   std::size_t stations_in_area, double max_capacity_mbps,
                                   const DayProfile& profile, const SharedAccessPolicy& policy);

void write_impact_header(std::ostream& out);
void write_impact_row(std::ostream& out, const ImpactRecord& record);

}  // namespace lsasim
