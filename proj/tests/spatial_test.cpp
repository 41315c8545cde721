#include "lsasim/spatial.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include "lsasim/error.hpp"
#include "lsasim/rng.hpp"
#include "test_support.hpp"

namespace lsasim {
namespace {

AreaSpec area_at(int id, AreaKind kind, double x, double y) {
  AreaSpec a;
  a.id = id;
  a.kind = kind;
  a.center = {x, y};
  return a;
}

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments poisson_moments(double lambda, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> xs(n);
  for (auto& x : xs) x = static_cast<double>(sample_bs_count(lambda, rng));
  Moments m;
  for (double x : xs) m.mean += x;
  m.mean /= n;
  for (double x : xs) m.var += (x - m.mean) * (x - m.mean);
  m.var /= (n - 1);
  return m;
}

class PoissonMoments : public ::testing::TestWithParam<double> {};

TEST_P(PoissonMoments, MeanAndVarianceMatchLambda) {
  const double lambda = GetParam();
  const int n = 200'000;
  const auto m = poisson_moments(lambda, n, 99);
  // For Poisson, Var(X) = lambda and Var(S^2) ~ (lambda + 2 lambda^2) / n.
  EXPECT_NEAR(m.mean, lambda, 3.0 * std::sqrt(lambda / n));
  EXPECT_NEAR(m.var, lambda, 3.0 * std::sqrt((lambda + 2.0 * lambda * lambda) / n));
}

INSTANTIATE_TEST_SUITE_P(Lambdas, PoissonMoments,
                         ::testing::Values(0.5, 9.99, 10.0, 66.776, 387.0, 427.2, 1e4));

TEST(PoissonSampler, SmallMeanPmfMatches) {
  // Chi-square against the exact pmf for lambda = 3.
  const double lambda = 3.0;
  const int n = 100'000;
  Rng rng(4);
  std::array<int, 10> counts{};
  for (int i = 0; i < n; ++i) {
    const auto k = sample_bs_count(lambda, rng);
    ++counts[static_cast<std::size_t>(std::min<std::int64_t>(k, 9))];
  }
  double chi2 = 0.0;
  double tail = 1.0;
  for (int k = 0; k < 10; ++k) {
    double p = std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
    if (k == 9) p = tail;
    tail -= p;
    const double e = n * p;
    chi2 += (counts[static_cast<std::size_t>(k)] - e) * (counts[static_cast<std::size_t>(k)] - e) / e;
  }
  // df = 9, 1% upper critical value.
  EXPECT_LT(chi2, 21.666);
}

TEST(PoissonSampler, TinyMeanIsAlmostAlwaysZero) {
  Rng rng(1);
  for (int i = 0; i < 10'000; ++i) ASSERT_EQ(sample_bs_count(1e-9, rng), 0);
}

TEST(PoissonSampler, RejectsNonPositiveMean) {
  Rng rng(1);
  EXPECT_THROW((void)sample_bs_count(0.0, rng), Error);
  EXPECT_THROW((void)sample_bs_count(-1.0, rng), Error);
  EXPECT_THROW((void)sample_bs_count(std::nan(""), rng), Error);
}

TEST(PppConfig, ModesGiveExpectedMeans) {
  const auto ia = area_at(0, AreaKind::Industrial, 5, 5);
  const auto ra = area_at(1, AreaKind::Residential, 2, 2);
  PppConfig ppp;
  EXPECT_DOUBLE_EQ(ppp.mean_for(ia), 387.0);
  EXPECT_DOUBLE_EQ(ppp.mean_for(ra), 61.0);
  ppp.mode = PppMode::Intensity;
  EXPECT_NEAR(ppp.mean_for(ia), 427.2, 1e-9);
  EXPECT_NEAR(ppp.mean_for(ra), 66.776, 1e-9);
}

TEST(DeployStations, MeanCountsNearTargets) {
  CityLayout layout;
  layout.areas.push_back(area_at(0, AreaKind::Industrial, 3, 3));
  layout.areas.push_back(area_at(1, AreaKind::Residential, 7.5, 7.5));
  const int reps = 1000;
  double ia = 0;
  double ra = 0;
  for (int r = 0; r < reps; ++r) {
    Rng rng(derive_seed(42, {static_cast<std::uint64_t>(r)}));
    const auto map = deploy_stations(layout, {}, {}, rng);
    ia += static_cast<double>(map.count(0));
    ra += static_cast<double>(map.count(1));
  }
  EXPECT_NEAR(ia / reps, 387.0, 0.02 * 387.0);
  EXPECT_NEAR(ra / reps, 61.0, 0.05 * 61.0);
}

TEST(DeployStations, IdsUniqueAndInsideOwningArea) {
  CityLayout layout;
  layout.areas.push_back(area_at(0, AreaKind::Industrial, 3, 3));
  layout.areas.push_back(area_at(1, AreaKind::Residential, 7.5, 7.5));
  layout.areas.push_back(area_at(2, AreaKind::Residential, 3, 7.5));
  Rng rng(17);
  const auto map = deploy_stations(layout, {}, {}, rng);
  std::set<int> ids;
  for (const auto& bs : map.all()) {
    EXPECT_TRUE(ids.insert(bs.id).second);
    EXPECT_TRUE(layout.area(bs.area_id).contains(bs.position));
    EXPECT_EQ(bs.max_capacity_mbps, 2660.0);
    EXPECT_EQ(bs.bandwidth_mhz, 400.0);
  }
  EXPECT_EQ(ids.size(), map.total());
  std::ostringstream csv;
  write_stations_csv(csv, map);
  const auto text = csv.str();
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')),
            map.total() + 1);
}

TEST(PlaceStations, UniformOverGridCells) {
  const auto a = area_at(0, AreaKind::Industrial, 5, 5);
  Rng rng(23);
  const int n = 100'000;
  const auto stations = place_stations(a, n, rng, 0);
  std::array<int, 16> grid{};
  std::vector<double> xs;
  xs.reserve(n);
  for (const auto& bs : stations) {
    const double u = (bs.position.x_km - a.min_x()) / a.side_km;
    const double v = (bs.position.y_km - a.min_y()) / a.side_km;
    const int i = std::min(3, static_cast<int>(u * 4));
    const int j = std::min(3, static_cast<int>(v * 4));
    ++grid[static_cast<std::size_t>(4 * i + j)];
    xs.push_back(u);
  }
  const double e = n / 16.0;
  double chi2 = 0.0;
  for (int c : grid) chi2 += (c - e) * (c - e) / e;
  EXPECT_LT(chi2, 30.578);  // df = 15, alpha = 0.01

  std::sort(xs.begin(), xs.end());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d = std::max(d, std::max(static_cast<double>(i + 1) / n - xs[i],
                             xs[i] - static_cast<double>(i) / n));
  }
  EXPECT_LT(d, testing::ks_critical_001(n));
}

TEST(PlaceStations, ZeroAndOne) {
  const auto a = area_at(0, AreaKind::Residential, 5, 5);
  Rng rng(2);
  EXPECT_TRUE(place_stations(a, 0, rng, 0).empty());
  const auto one = place_stations(a, 1, rng, 7);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].id, 7);
  EXPECT_TRUE(a.contains(one[0].position));
  EXPECT_THROW((void)place_stations(a, -1, rng, 0), Error);
}

std::vector<BaseStation> line_of_stations() {
  std::vector<BaseStation> s;
  for (int i = 0; i < 6; ++i) {
    BaseStation bs;
    bs.id = 10 - i;
    bs.position = {static_cast<double>(i), 0.0};
    s.push_back(bs);
  }
  return s;
}

TEST(NearestStations, OrderedByDistance) {
  const auto s = line_of_stations();
  const auto near = nearest_stations(s, {2.2, 0.0}, 3);
  ASSERT_EQ(near.size(), 3u);
  EXPECT_EQ(near[0].position.x_km, 2.0);
  EXPECT_EQ(near[1].position.x_km, 3.0);
  EXPECT_EQ(near[2].position.x_km, 1.0);
}

TEST(NearestStations, TiesBreakOnLowerId) {
  const auto s = line_of_stations();
  // x = 2.5 is equidistant from x=2 (id 8) and x=3 (id 7).
  const auto near = nearest_stations(s, {2.5, 0.0}, 2);
  ASSERT_EQ(near.size(), 2u);
  EXPECT_EQ(near[0].id, 7);
  EXPECT_EQ(near[1].id, 8);
}

TEST(NearestStations, KLargerThanSetReturnsAll) {
  const auto s = line_of_stations();
  const auto near = nearest_stations(s, {0.0, 0.0}, 100);
  ASSERT_EQ(near.size(), s.size());
  for (std::size_t i = 1; i < near.size(); ++i) {
    EXPECT_LE(distance(near[i - 1].position, {0, 0}), distance(near[i].position, {0, 0}));
  }
}

TEST(NearestStations, BruteForceOracle) {
  const auto a = area_at(0, AreaKind::Industrial, 5, 5);
  Rng rng(31);
  const auto s = place_stations(a, 300, rng, 0);
  for (int t = 0; t < 200; ++t) {
    const Point p{rng.uniform(a.min_x(), a.max_x()), rng.uniform(a.min_y(), a.max_y())};
    const auto got = nearest_stations(s, p, 4);
    auto sorted = s;
    std::stable_sort(sorted.begin(), sorted.end(), [&](const auto& x, const auto& y) {
      return distance(x.position, p) < distance(y.position, p);
    });
    for (std::size_t i = 0; i < 4; ++i) ASSERT_EQ(got[i].id, sorted[i].id);
  }
}

TEST(NearestStations, EmptySetIsSimulationError) {
  const std::vector<BaseStation> none;
  try {
    (void)nearest_stations(none, {1, 1}, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::Simulation);
  }
}

}  // namespace
}  // namespace lsasim
