#include "lsasim/geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "lsasim/error.hpp"
#include "lsasim/rng.hpp"

namespace lsasim {
namespace {

AreaSpec square(int id, AreaKind kind, double x, double y, int year = 1) {
  AreaSpec a;
  a.id = id;
  a.kind = kind;
  a.center = {x, y};
  a.deployment_year = year;
  return a;
}

// Monte Carlo hit-sampling oracle for area(a ∩ b) / area(a).
double hit_sampled_overlap(const AreaSpec& a, const AreaSpec& b, int n, Rng& rng) {
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    const Point p{rng.uniform(a.min_x(), a.max_x()), rng.uniform(a.min_y(), a.max_y())};
    if (b.contains(p)) ++hits;
  }
  return static_cast<double>(hits) / n;
}

TEST(OverlapFraction, IdentityAndDisjoint) {
  const auto a = square(0, AreaKind::Industrial, 5, 5);
  EXPECT_DOUBLE_EQ(overlap_fraction(a, a), 1.0);
  const auto far = square(1, AreaKind::Residential, 1.5, 1.5);
  const auto other = square(2, AreaKind::Residential, 8.5, 8.5);
  EXPECT_EQ(overlap_fraction(far, other), 0.0);
  // Edge contact has zero area.
  const auto touching = square(3, AreaKind::Residential, 1.5 + kDefaultAreaSideKm, 1.5);
  EXPECT_EQ(overlap_fraction(far, touching), 0.0);
}

TEST(OverlapFraction, OffsetSquaresMatchClosedFormAndHitSampling) {
  const auto a = square(0, AreaKind::Industrial, 5, 5);
  // Offset of 0.9 side leaves a 0.1-side sliver: exactly 10%.
  const auto exact = square(1, AreaKind::Residential, 5 + 0.9 * kDefaultAreaSideKm, 5);
  EXPECT_NEAR(overlap_fraction(a, exact), 0.1, 1e-12);
  EXPECT_NEAR(overlap_fraction(a, exact) * a.area_km2(), 0.8, 1e-12);

  const auto b = square(2, AreaKind::Residential, 5 + 2.5457, 5);
  const double closed = overlap_fraction(a, b);
  EXPECT_NEAR(closed, (kDefaultAreaSideKm - 2.5457) / kDefaultAreaSideKm, 1e-12);
  EXPECT_NEAR(closed, 0.1, 1e-4);

  Rng rng(2024);
  const int n = 1'000'000;
  const double sampled = hit_sampled_overlap(a, b, n, rng);
  const double se = std::sqrt(closed * (1 - closed) / n);
  EXPECT_NEAR(sampled, closed, 3 * se);
}

TEST(OverlapFraction, SymmetricNumeratorForEqualAreas) {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto a = square(0, AreaKind::Industrial, rng.uniform(2, 8), rng.uniform(2, 8));
    const auto b = square(1, AreaKind::Residential, rng.uniform(2, 8), rng.uniform(2, 8));
    const double f = overlap_fraction(a, b);
    ASSERT_GE(f, 0.0);
    ASSERT_LE(f, 1.0);
    ASSERT_DOUBLE_EQ(f, overlap_fraction(b, a));
  }
}

TEST(PlaceAreas, IndustrialOnly) {
  Rng rng(1);
  PlacementOptions opt;
  opt.n_residential = 0;
  const auto layout = place_areas(CityExtent{}, opt, rng);
  ASSERT_EQ(layout.areas.size(), 1u);
  EXPECT_EQ(layout.areas[0].kind, AreaKind::Industrial);
  EXPECT_EQ(layout.areas[0].deployment_year, 1);
  EXPECT_TRUE(layout.areas[0].inside(layout.extent));
  EXPECT_NO_THROW(validate_layout(layout, opt.max_overlap));
}

TEST(PlaceAreas, FourResidentialSatisfyOverlapRules) {
  const PlacementOptions opt;  // 4 RAs, 10% cap
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const auto layout = place_areas(CityExtent{}, opt, rng);
    ASSERT_EQ(layout.areas.size(), 5u);
    const auto& ia = layout.industrial();
    for (std::size_t i = 1; i < layout.areas.size(); ++i) {
      const auto& ra = layout.areas[i];
      EXPECT_EQ(ra.kind, AreaKind::Residential);
      EXPECT_EQ(ra.deployment_year, static_cast<int>(i) + 1);
      EXPECT_TRUE(ra.inside(layout.extent));
      EXPECT_LE(overlap_fraction(ia, ra) * ia.area_km2(), 0.8 + 1e-12);
      for (std::size_t j = i + 1; j < layout.areas.size(); ++j) {
        EXPECT_EQ(overlap_fraction(ra, layout.areas[j]), 0.0);
      }
    }
    EXPECT_NO_THROW(validate_layout(layout, opt.max_overlap));
  }
}

TEST(PlaceAreas, DeterministicGivenStream) {
  Rng a(77);
  Rng b(77);
  const auto la = place_areas(CityExtent{}, {}, a);
  const auto lb = place_areas(CityExtent{}, {}, b);
  for (std::size_t i = 0; i < la.areas.size(); ++i) {
    EXPECT_EQ(la.areas[i].center, lb.areas[i].center);
  }
}

TEST(PlaceAreas, InfeasiblePackingFails) {
  // Exhaustive grid oracle: in a 2.9 km city, any two 2.83 km squares overlap,
  // so four disjoint residential areas cannot exist.
  const double half = 0.5 * kDefaultAreaSideKm;
  const double lo = half;
  const double hi = 2.9 - half;
  bool found_disjoint_pair = false;
  for (double x1 = lo; x1 <= hi; x1 += 0.01) {
    for (double y1 = lo; y1 <= hi; y1 += 0.01) {
      for (double x2 = lo; x2 <= hi; x2 += 0.01) {
        for (double y2 = lo; y2 <= hi; y2 += 0.01) {
          const auto a = square(1, AreaKind::Residential, x1, y1);
          const auto b = square(2, AreaKind::Residential, x2, y2);
          if (overlap_fraction(a, b) == 0.0) found_disjoint_pair = true;
        }
      }
    }
  }
  ASSERT_FALSE(found_disjoint_pair);

  Rng rng(3);
  PlacementOptions opt;
  opt.n_residential = 4;
  try {
    (void)place_areas(CityExtent{2.9}, opt, rng);
    FAIL() << "expected placement failure";
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::Simulation);
    EXPECT_NE(std::string(e.what()).find("placement failed"), std::string::npos);
  }
}

TEST(PlaceAreas, RejectsBadArguments) {
  Rng rng(1);
  PlacementOptions opt;
  opt.n_residential = 5;
  EXPECT_THROW((void)place_areas(CityExtent{}, opt, rng), Error);
  opt.n_residential = 2;
  opt.max_overlap = 1.5;
  EXPECT_THROW((void)place_areas(CityExtent{}, opt, rng), Error);
}

CityLayout hand_layout() {
  CityLayout layout;
  layout.areas.push_back(square(0, AreaKind::Industrial, 3, 3, 1));
  // Overlaps the IA by 10% along x.
  layout.areas.push_back(square(1, AreaKind::Residential, 3 + 0.9 * kDefaultAreaSideKm, 3, 2));
  layout.areas.push_back(square(2, AreaKind::Residential, 3, 7.5, 3));
  return layout;
}

TEST(Locate, CoverageFollowsRollout) {
  const auto layout = hand_layout();
  ASSERT_NO_THROW(validate_layout(layout, 0.10));
  EXPECT_EQ(locate(layout, {3, 3}, 1), &layout.areas[0]);
  // RA deployed in year 3 is not yet covering in year 2.
  EXPECT_EQ(locate(layout, {3, 7.5}, 2), nullptr);
  EXPECT_EQ(locate(layout, {3, 7.5}, 3), &layout.areas[2]);
  EXPECT_EQ(locate(layout, {9.8, 0.2}, 5), nullptr);
}

TEST(Locate, OverlapResolvesToIndustrial) {
  const auto layout = hand_layout();
  const Point p{3 + 0.5 * kDefaultAreaSideKm - 0.05, 3};
  ASSERT_TRUE(layout.areas[0].contains(p));
  ASSERT_TRUE(layout.areas[1].contains(p));
  EXPECT_EQ(locate(layout, p, 5), &layout.areas[0]);
  EXPECT_EQ(locate(layout, p, 5), locate(layout, p, 5));
}

TEST(Locate, MonteCarloCoverageAtYearOne) {
  Rng placement(11);
  const auto layout = place_areas(CityExtent{}, {}, placement);
  Rng rng(12);
  const int n = 1'000'000;
  int covered = 0;
  for (int i = 0; i < n; ++i) {
    if (locate(layout, {rng.uniform(0, 10), rng.uniform(0, 10)}, 1) != nullptr) ++covered;
  }
  const double p = 0.08;
  EXPECT_NEAR(static_cast<double>(covered) / n, p, 3 * std::sqrt(p * (1 - p) / n));
}

TEST(Layout, CsvRoundTrip) {
  Rng rng(8);
  const auto layout = place_areas(CityExtent{}, {}, rng);
  std::stringstream s;
  write_layout_csv(s, layout);
  EXPECT_EQ(s.str().substr(0, s.str().find('\n')),
            "area_id,kind,center_x_km,center_y_km,side_km,deployment_year");
  const auto back = read_layout_csv(s, layout.extent);
  ASSERT_EQ(back.areas.size(), layout.areas.size());
  for (std::size_t i = 0; i < back.areas.size(); ++i) {
    EXPECT_EQ(back.areas[i].center, layout.areas[i].center);
    EXPECT_EQ(back.areas[i].kind, layout.areas[i].kind);
    EXPECT_EQ(back.areas[i].deployment_year, layout.areas[i].deployment_year);
  }
}

TEST(Layout, ValidateCatchesBrokenInvariants) {
  auto layout = hand_layout();
  layout.areas[2].center = layout.areas[1].center;  // RA-RA overlap
  EXPECT_THROW(validate_layout(layout, 0.10), Error);
  layout = hand_layout();
  layout.areas[1].center.x_km = 3.5;  // IA-RA overlap well above 10%
  EXPECT_THROW(validate_layout(layout, 0.10), Error);
  layout = hand_layout();
  layout.areas[2].deployment_year = 2;  // duplicate year
  EXPECT_THROW(validate_layout(layout, 0.10), Error);
}

}  // namespace
}  // namespace lsasim
