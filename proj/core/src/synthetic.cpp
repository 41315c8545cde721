#include "lsasim/synthetic.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

#include "lsasim/rng.hpp"

namespace lsasim::synthetic {

DayProfile raw_traffic() {
  // Mbps per cell, hour 0..23.
  return {330, 260, 200, 160, 135, 130, 145, 180, 220, 255, 280, 295,
          305, 310, 315, 325, 340, 360, 385, 430, 500, 440, 385, 360};
}

EmpiricalDistribution daily_count() {
  constexpr int kMax = 200;
  std::vector<double> support;
  std::vector<double> pmf;
  double log_p = -kDailyEventMean;  // log P(0)
  for (int k = 0; k <= kMax; ++k) {
    if (k > 0) log_p += std::log(kDailyEventMean) - std::log(static_cast<double>(k));
    support.push_back(k);
    pmf.push_back(std::exp(log_p));
  }
  return EmpiricalDistribution::from_weights(support, pmf);
}

HourHistogram start_hours() {
  // Relative call volume by start hour.
  constexpr std::array<double, 24> kWeights{
      3.6, 2.9, 2.4, 2.0, 1.7, 1.5, 1.6, 1.9, 2.3, 2.6, 2.9, 3.2,
      3.6, 3.8, 4.0, 4.3, 4.8, 5.5, 6.3, 6.8, 6.9, 6.3, 5.3, 4.4};
  return HourHistogram::from_counts(kWeights);
}

EmpiricalDistribution durations() {
  constexpr double kMedian = 50.0;
  constexpr double kSigma = 1.0;
  const int n = static_cast<int>(kMaxDurationMin);
  std::vector<double> support(static_cast<std::size_t>(n));
  std::vector<double> weights(static_cast<std::size_t>(n));
  const auto cdf = [&](double x) {
    return 0.5 * std::erfc(-(std::log(x) - std::log(kMedian)) / (kSigma * std::numbers::sqrt2));
  };
  // Mass of (m - 1, m] goes to whole minute m.
  for (int m = 1; m <= n; ++m) {
    support[static_cast<std::size_t>(m - 1)] = m;
    weights[static_cast<std::size_t>(m - 1)] = m == 1 ? cdf(1.0) : cdf(m) - cdf(m - 1.0);
  }
  return EmpiricalDistribution::from_weights(support, weights);
}

EventDistributions distributions() { return {daily_count(), start_hours(), durations()}; }

std::vector<TrafficRecord> traffic_records(int n_cells, int n_hours, Rng& rng) {
  const auto raw = raw_traffic();
  std::vector<TrafficRecord> out;
  out.reserve(static_cast<std::size_t>(n_cells) * static_cast<std::size_t>(n_hours));
  for (int c = 0; c < n_cells; ++c) {
    const double cell_scale = std::exp(0.3 * (rng.uniform() - 0.5));
    for (int t = 0; t < n_hours; ++t) {
      const int day = 22 + t / 24;
      const int hour = t % 24;
      // Sum of uniforms, roughly normal on [-1, 1] after scaling.
      const double noise = (rng.uniform() + rng.uniform() + rng.uniform() - 1.5) / 1.5;
      TrafficRecord r;
      r.cell_id = fmt::format("cell{:02d}", c);
      r.timestamp = fmt::format("2018-10-{:02d}T{:02d}:00", day, hour);
      r.hour_of_day = hour;
      r.volume_mbps = raw[static_cast<std::size_t>(hour)] * cell_scale * std::exp(0.2 * noise);
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace lsasim::synthetic
