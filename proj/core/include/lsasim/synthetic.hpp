#pragma once

#include <vector>

#include "lsasim/events.hpp"
#include "lsasim/traffic.hpp"

namespace lsasim {

class Rng;

/// Calibrated stand-ins for the proprietary datasets. They are shaped after
/// the published figures, not fitted to the underlying data:
///  - daily event count ~ Poisson(53.1) on 0..200,
///  - start hours peaking in the evening (19:00-21:00),
///  - attending time log-normal (median 50 min) on whole minutes 1..1140,
///  - cell traffic peaking at 20:00, trough at 05:00.
namespace synthetic {

inline constexpr double kDailyEventMean = 53.1;
inline constexpr double kMaxDurationMin = 1140.0;

[[nodiscard]] DayProfile raw_traffic();
[[nodiscard]] EmpiricalDistribution daily_count();
[[nodiscard]] HourHistogram start_hours();
[[nodiscard]] EmpiricalDistribution durations();
[[nodiscard]] EventDistributions distributions();

/// Hour-stamped records for `n_cells` cells over `n_hours` consecutive hours
/// starting 2018-10-22T00, each the raw profile times a log-normal factor.
[[nodiscard]] std::vector<TrafficRecord> traffic_records(int n_cells, int n_hours, Rng& rng);

}  // namespace synthetic
}  // namespace lsasim
