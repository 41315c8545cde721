#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace lsasim {

class Rng;

enum class AreaKind { Industrial, Residential };

[[nodiscard]] std::string_view to_string(AreaKind kind) noexcept;
/// Accepts "industrial"/"residential" (case-insensitive) and the IA/RA short forms.
[[nodiscard]] AreaKind parse_area_kind(std::string_view text);

struct Point {
  double x_km = 0.0;
  double y_km = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

[[nodiscard]] inline double distance(Point a, Point b) noexcept {
  return std::hypot(a.x_km - b.x_km, a.y_km - b.y_km);
}

/// The square city, anchored at the origin: [0, side] x [0, side].
struct CityExtent {
  double side_km = 10.0;

  [[nodiscard]] double area_km2() const noexcept { return side_km * side_km; }
  [[nodiscard]] bool contains(Point p) const noexcept {
    return p.x_km >= 0.0 && p.x_km <= side_km && p.y_km >= 0.0 && p.y_km <= side_km;
  }
};

/// Side of the default 8 km^2 deployment square.
inline const double kDefaultAreaSideKm = std::sqrt(8.0);

/// An axis-aligned square deployment area. Membership is closed on all edges.
struct AreaSpec {
  int id = 0;
  AreaKind kind = AreaKind::Residential;
  Point center;
  double side_km = kDefaultAreaSideKm;
  int deployment_year = 1;

  [[nodiscard]] double min_x() const noexcept { return center.x_km - 0.5 * side_km; }
  [[nodiscard]] double max_x() const noexcept { return center.x_km + 0.5 * side_km; }
  [[nodiscard]] double min_y() const noexcept { return center.y_km - 0.5 * side_km; }
  [[nodiscard]] double max_y() const noexcept { return center.y_km + 0.5 * side_km; }
  [[nodiscard]] double area_km2() const noexcept { return side_km * side_km; }
  [[nodiscard]] bool contains(Point p) const noexcept {
    return p.x_km >= min_x() && p.x_km <= max_x() && p.y_km >= min_y() && p.y_km <= max_y();
  }
  [[nodiscard]] bool inside(const CityExtent& city) const noexcept {
    return min_x() >= 0.0 && min_y() >= 0.0 && max_x() <= city.side_km &&
           max_y() <= city.side_km;
  }
};

/// City plus its deployment areas. Areas are stored in deployment order:
/// the industrial area first, then residential areas by ascending year.
struct CityLayout {
  CityExtent extent;
  std::vector<AreaSpec> areas;

  [[nodiscard]] const AreaSpec& industrial() const;
  [[nodiscard]] const AreaSpec& area(int id) const;
};

struct PlacementOptions {
  int n_residential = 4;
  double max_overlap = 0.10;
  double area_side_km = kDefaultAreaSideKm;
  std::int64_t max_attempts = 100'000;
};

/// area(a ∩ b) / area(a).
[[nodiscard]] double overlap_fraction(const AreaSpec& a, const AreaSpec& b) noexcept;

/// Draws all area centres uniformly and rejects whole layouts that violate the
/// overlap rules: residential areas pairwise disjoint, and each residential
/// area overlapping the industrial one by at most `max_overlap` of its area.
/// Throws Error(Simulation) once `max_attempts` layouts have been rejected.
[[nodiscard]] CityLayout place_areas(const CityExtent& extent, const PlacementOptions& options,
                                     Rng& rng);

/// Throws Error(Config) describing the first broken layout invariant.
void validate_layout(const CityLayout& layout, double max_overlap);

/// Covering area for `p` among areas deployed by `year`, or nullptr when the
/// point is outside 5G coverage. A point in an industrial/residential overlap
/// resolves to the industrial area.
[[nodiscard]] const AreaSpec* locate(const CityLayout& layout, Point p, int year) noexcept;

void write_layout_csv(std::ostream& out, const CityLayout& layout);
[[nodiscard]] CityLayout read_layout_csv(std::istream& in, const CityExtent& extent);

}  // namespace lsasim
