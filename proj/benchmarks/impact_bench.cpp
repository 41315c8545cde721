#include <benchmark/benchmark.h>

#include "lsasim/impact.hpp"
#include "lsasim/rng.hpp"
#include "lsasim/synthetic.hpp"

namespace {

void BM_CellImpact(benchmark::State& state) {
  const auto profiles = lsasim::profiles_for_layout(lsasim::synthetic::raw_traffic(), {});
  const lsasim::SharedAccessPolicy policy;
  const double duration = static_cast<double>(state.range(0));
  double start = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lsasim::cell_impact(profiles.residential.values, start, duration, policy, 2660.0));
    start = start >= 1400.0 ? 0.0 : start + 37.0;
  }
}
BENCHMARK(BM_CellImpact)->Arg(60)->Arg(1140)->Arg(10000);

void BM_NearestStations(benchmark::State& state) {
  lsasim::Rng rng(5);
  lsasim::AreaSpec area;
  area.center = {5.0, 5.0};
  const auto stations = lsasim::place_stations(area, state.range(0), rng, 0);
  for (auto _ : state) {
    const lsasim::Point p{rng.uniform(area.min_x(), area.max_x()),
                          rng.uniform(area.min_y(), area.max_y())};
    benchmark::DoNotOptimize(lsasim::nearest_stations(stations, p, 4));
  }
}
BENCHMARK(BM_NearestStations)->Arg(61)->Arg(387);

}  // namespace
