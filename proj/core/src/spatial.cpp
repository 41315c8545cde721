#include "lsasim/spatial.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <ostream>

#include "lsasim/csv.hpp"
#include "lsasim/error.hpp"
#include "lsasim/rng.hpp"

namespace lsasim {

double PppConfig::mean_for(const AreaSpec& area) const noexcept {
  const bool ia = area.kind == AreaKind::Industrial;
  if (mode == PppMode::MeanCount) return ia ? mean_count_ia : mean_count_ra;
  return (ia ? intensity_ia : intensity_ra) * area.area_km2();
}

namespace {

std::int64_t poisson_multiplication(double mean, Rng& rng) {
  const double limit = std::exp(-mean);
  std::int64_t k = 0;
  double prod = rng.uniform_pos();
  while (prod > limit) {
    ++k;
    prod *= rng.uniform_pos();
  }
  return k;
}

// W. Hormann, "The transformed rejection method for generating Poisson
// random variables", Insurance: Mathematics and Economics 12 (1993).
std::int64_t poisson_ptrs(double mean, Rng& rng) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::int64_t>(k);
    }
  }
}

}  // namespace

std::int64_t sample_bs_count(double mean, Rng& rng) {
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw Error(ErrorCategory::Config,
                fmt::format("Poisson mean must be positive and finite, got {}", mean));
  }
  return mean < 10.0 ? poisson_multiplication(mean, rng) : poisson_ptrs(mean, rng);
}

std::vector<BaseStation> place_stations(const AreaSpec& area, std::int64_t count, Rng& rng,
                                        int first_id, const CellParams& cell) {
  if (count < 0) {
    throw Error(ErrorCategory::Config, "station count must be non-negative");
  }
  std::vector<BaseStation> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    BaseStation bs;
    bs.id = first_id + static_cast<int>(i);
    bs.position.x_km = rng.uniform(area.min_x(), area.max_x());
    bs.position.y_km = rng.uniform(area.min_y(), area.max_y());
    bs.area_id = area.id;
    bs.bandwidth_mhz = cell.bandwidth_mhz;
    bs.max_capacity_mbps = cell.max_capacity_mbps;
    out.push_back(bs);
  }
  return out;
}

std::vector<BaseStation> nearest_stations(std::span<const BaseStation> stations, Point point,
                                          std::size_t k) {
  if (stations.empty()) {
    throw Error(ErrorCategory::Simulation,
                fmt::format("no base stations available near ({}, {})", point.x_km,
                            point.y_km));
  }
  if (k == 0) {
    throw Error(ErrorCategory::Config, "nearest_stations needs k >= 1");
  }
  struct Ranked {
    double dist;
    std::size_t index;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(stations.size());
  for (std::size_t i = 0; i < stations.size(); ++i) {
    ranked.push_back({distance(stations[i].position, point), i});
  }
  const auto take = std::min(k, ranked.size());
  const auto before = [&](const Ranked& a, const Ranked& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    return stations[a.index].id < stations[b.index].id;
  };
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take),
                    ranked.end(), before);
  std::vector<BaseStation> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(stations[ranked[i].index]);
  return out;
}

void StationMap::add(std::vector<BaseStation> stations) {
  for (auto& bs : stations) by_area_[bs.area_id].push_back(bs);
}

std::span<const BaseStation> StationMap::in_area(int area_id) const noexcept {
  const auto it = by_area_.find(area_id);
  if (it == by_area_.end()) return {};
  return it->second;
}

std::size_t StationMap::total() const noexcept {
  std::size_t n = 0;
  for (const auto& [id, v] : by_area_) n += v.size();
  return n;
}

std::vector<BaseStation> StationMap::all() const {
  std::vector<BaseStation> out;
  for (const auto& [id, v] : by_area_) out.insert(out.end(), v.begin(), v.end());
  return out;
}

StationMap deploy_stations(const CityLayout& layout, const PppConfig& ppp,
                           const CellParams& cell, Rng& rng) {
  StationMap map;
  int next_id = 0;
  for (const auto& area : layout.areas) {
    const auto n = sample_bs_count(ppp.mean_for(area), rng);
    map.add(place_stations(area, n, rng, next_id, cell));
    next_id += static_cast<int>(n);
  }
  return map;
}

void write_stations_csv(std::ostream& out, const StationMap& stations) {
  out << "bs_id,area_id,x_km,y_km,bandwidth_mhz,max_capacity_mbps\n";
  for (const auto& bs : stations.all()) {
    out << bs.id << ',' << bs.area_id << ',' << csv::format_number(bs.position.x_km) << ','
        << csv::format_number(bs.position.y_km) << ',' << csv::format_number(bs.bandwidth_mhz)
        << ',' << csv::format_number(bs.max_capacity_mbps) << '\n';
  }
}

}  // namespace lsasim
