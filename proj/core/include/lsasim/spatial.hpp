#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "lsasim/geometry.hpp"

namespace lsasim {

class Rng;

struct CellParams {
  double bandwidth_mhz = 400.0;
  /// Four times the 665 Mbps guaranteed on a 25% slice.
  double max_capacity_mbps = 2660.0;
};

struct BaseStation {
  int id = 0;
  Point position;
  int area_id = 0;
  double bandwidth_mhz = 400.0;
  double max_capacity_mbps = 2660.0;
};

enum class PppMode {
  MeanCount,  // Poisson mean given directly per area
  Intensity,  // Poisson mean = intensity per km^2 x area
};

struct PppConfig {
  PppMode mode = PppMode::MeanCount;
  double mean_count_ia = 387.0;
  double mean_count_ra = 61.0;
  double intensity_ia = 53.4;
  double intensity_ra = 8.347;

  /// Expected station count for `area` under the selected mode.
  [[nodiscard]] double mean_for(const AreaSpec& area) const noexcept;
};

/// Exact Poisson draw. Small means use sequential multiplication of uniforms;
/// means >= 10 use Hormann's transformed rejection with squeeze (PTRS).
[[nodiscard]] std::int64_t sample_bs_count(double mean, Rng& rng);

/// `count` stations i.i.d. uniform over the area square, ids first_id, first_id+1, ...
[[nodiscard]] std::vector<BaseStation> place_stations(const AreaSpec& area, std::int64_t count,
                                                      Rng& rng, int first_id,
                                                      const CellParams& cell = {});

/// Up to k stations closest to `point`, by ascending distance then ascending id.
/// Throws Error(Simulation) when `stations` is empty.
[[nodiscard]] std::vector<BaseStation> nearest_stations(std::span<const BaseStation> stations,
                                                        Point point, std::size_t k);

/// Stations of a whole layout, grouped by owning area.
class StationMap {
 public:
  void add(std::vector<BaseStation> stations);

  [[nodiscard]] std::span<const BaseStation> in_area(int area_id) const noexcept;
  [[nodiscard]] std::size_t count(int area_id) const noexcept { return in_area(area_id).size(); }
  [[nodiscard]] std::size_t total() const noexcept;
  /// All stations ordered by area id, then station id.
  [[nodiscard]] std::vector<BaseStation> all() const;

 private:
  std::map<int, std::vector<BaseStation>> by_area_;
};

/// Draws a Poisson count for every area and places that many stations.
/// Station ids are unique across the whole layout.
[[nodiscard]] StationMap deploy_stations(const CityLayout& layout, const PppConfig& ppp,
                                         const CellParams& cell, Rng& rng);

void write_stations_csv(std::ostream& out, const StationMap& stations);

}  // namespace lsasim
