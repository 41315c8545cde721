#include "lsasim/geometry.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <ostream>
#include <string>

#include "lsasim/csv.hpp"
#include "lsasim/error.hpp"
#include "lsasim/rng.hpp"

namespace lsasim {

std::string_view to_string(AreaKind kind) noexcept {
  return kind == AreaKind::Industrial ? "industrial" : "residential";
}

AreaKind parse_area_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "industrial" || lower == "ia") return AreaKind::Industrial;
  if (lower == "residential" || lower == "ra") return AreaKind::Residential;
  throw Error(ErrorCategory::Input, fmt::format("unknown area kind '{}'", text));
}

const AreaSpec& CityLayout::industrial() const {
  for (const auto& a : areas) {
    if (a.kind == AreaKind::Industrial) return a;
  }
  throw Error(ErrorCategory::Config, "layout has no industrial area");
}

const AreaSpec& CityLayout::area(int id) const {
  for (const auto& a : areas) {
    if (a.id == id) return a;
  }
  throw Error(ErrorCategory::Config, fmt::format("layout has no area with id {}", id));
}

double overlap_fraction(const AreaSpec& a, const AreaSpec& b) noexcept {
  const double w = std::min(a.max_x(), b.max_x()) - std::max(a.min_x(), b.min_x());
  const double h = std::min(a.max_y(), b.max_y()) - std::max(a.min_y(), b.min_y());
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return std::clamp(w * h / a.area_km2(), 0.0, 1.0);
}

namespace {

bool layout_ok(const std::vector<AreaSpec>& areas, double max_overlap) {
  const AreaSpec& ia = areas.front();
  for (std::size_t i = 1; i < areas.size(); ++i) {
    if (overlap_fraction(ia, areas[i]) > max_overlap) return false;
    for (std::size_t j = i + 1; j < areas.size(); ++j) {
      if (overlap_fraction(areas[i], areas[j]) > 0.0) return false;
    }
  }
  return true;
}

}  // namespace

CityLayout place_areas(const CityExtent& extent, const PlacementOptions& options, Rng& rng) {
  if (!(extent.side_km > 0.0)) {
    throw Error(ErrorCategory::Config, "city side must be positive");
  }
  if (options.n_residential < 0 || options.n_residential > 4) {
    throw Error(ErrorCategory::Config,
                fmt::format("n_residential must be in 0..4 (rollout years 2..5), got {}",
                            options.n_residential));
  }
  if (!(options.max_overlap >= 0.0 && options.max_overlap <= 1.0)) {
    throw Error(ErrorCategory::Config, "max_overlap must lie in [0, 1]");
  }
  if (!(options.area_side_km > 0.0)) {
    throw Error(ErrorCategory::Config, "area side must be positive");
  }
  if (options.area_side_km > extent.side_km) {
    throw Error(ErrorCategory::Simulation,
                fmt::format("placement failed: a {} km area does not fit in a {} km city",
                            options.area_side_km, extent.side_km));
  }

  const double half = 0.5 * options.area_side_km;
  const auto n_areas = static_cast<std::size_t>(options.n_residential) + 1;
  std::vector<AreaSpec> areas(n_areas);
  for (std::size_t i = 0; i < n_areas; ++i) {
    areas[i].id = static_cast<int>(i);
    areas[i].kind = i == 0 ? AreaKind::Industrial : AreaKind::Residential;
    areas[i].side_km = options.area_side_km;
    areas[i].deployment_year = static_cast<int>(i) + 1;
  }

  for (std::int64_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    for (auto& a : areas) {
      a.center.x_km = rng.uniform(half, extent.side_km - half);
      a.center.y_km = rng.uniform(half, extent.side_km - half);
    }
    if (layout_ok(areas, options.max_overlap)) {
      return CityLayout{extent, areas};
    }
  }
  throw Error(ErrorCategory::Simulation,
              fmt::format("placement failed: no valid layout of 1 industrial + {} residential "
                          "areas ({} km) in a {} km city after {} attempts",
                          options.n_residential, options.area_side_km, extent.side_km,
                          options.max_attempts));
}

void validate_layout(const CityLayout& layout, double max_overlap) {
  const auto n_ia = std::count_if(layout.areas.begin(), layout.areas.end(),
                                  [](const AreaSpec& a) { return a.kind == AreaKind::Industrial; });
  if (n_ia != 1) {
    throw Error(ErrorCategory::Config,
                fmt::format("layout must have exactly one industrial area, found {}", n_ia));
  }
  std::vector<int> ra_years;
  for (const auto& a : layout.areas) {
    if (!(a.side_km > 0.0)) {
      throw Error(ErrorCategory::Config, fmt::format("area {} has non-positive side", a.id));
    }
    if (!a.inside(layout.extent)) {
      throw Error(ErrorCategory::Config, fmt::format("area {} extends outside the city", a.id));
    }
    if (a.kind == AreaKind::Industrial && a.deployment_year != 1) {
      throw Error(ErrorCategory::Config, "industrial area must deploy in year 1");
    }
    if (a.kind == AreaKind::Residential) {
      if (a.deployment_year < 2 || a.deployment_year > 5) {
        throw Error(ErrorCategory::Config,
                    fmt::format("residential area {} has deployment year {} outside 2..5", a.id,
                                a.deployment_year));
      }
      ra_years.push_back(a.deployment_year);
    }
  }
  std::sort(ra_years.begin(), ra_years.end());
  if (std::adjacent_find(ra_years.begin(), ra_years.end()) != ra_years.end()) {
    throw Error(ErrorCategory::Config, "residential deployment years must be distinct");
  }
  const AreaSpec& ia = layout.industrial();
  for (std::size_t i = 0; i < layout.areas.size(); ++i) {
    const auto& a = layout.areas[i];
    if (a.kind != AreaKind::Residential) continue;
    if (overlap_fraction(ia, a) > max_overlap) {
      throw Error(ErrorCategory::Config,
                  fmt::format("area {} overlaps the industrial area by more than {}", a.id,
                              max_overlap));
    }
    for (std::size_t j = i + 1; j < layout.areas.size(); ++j) {
      const auto& b = layout.areas[j];
      if (b.kind == AreaKind::Residential && overlap_fraction(a, b) > 0.0) {
        throw Error(ErrorCategory::Config,
                    fmt::format("residential areas {} and {} overlap", a.id, b.id));
      }
    }
  }
}

const AreaSpec* locate(const CityLayout& layout, Point p, int year) noexcept {
  const AreaSpec* hit = nullptr;
  for (const auto& a : layout.areas) {
    if (a.deployment_year > year || !a.contains(p)) continue;
    if (a.kind == AreaKind::Industrial) return &a;
    if (hit == nullptr) hit = &a;
  }
  return hit;
}

void write_layout_csv(std::ostream& out, const CityLayout& layout) {
  out << "area_id,kind,center_x_km,center_y_km,side_km,deployment_year\n";
  for (const auto& a : layout.areas) {
    out << a.id << ',' << to_string(a.kind) << ',' << csv::format_number(a.center.x_km) << ','
        << csv::format_number(a.center.y_km) << ',' << csv::format_number(a.side_km) << ','
        << a.deployment_year << '\n';
  }
}

CityLayout read_layout_csv(std::istream& in, const CityExtent& extent) {
  const auto table =
      csv::Table::parse(in, "layout.csv",
                        {"area_id", "kind", "center_x_km", "center_y_km", "side_km",
                         "deployment_year"});
  CityLayout layout{extent, {}};
  for (const auto& row : table.rows()) {
    AreaSpec a;
    a.id = static_cast<int>(table.integer(row, "area_id"));
    a.kind = parse_area_kind(table.field(row, "kind"));
    a.center = {table.number(row, "center_x_km"), table.number(row, "center_y_km")};
    a.side_km = table.number(row, "side_km");
    a.deployment_year = static_cast<int>(table.integer(row, "deployment_year"));
    layout.areas.push_back(a);
  }
  std::stable_sort(layout.areas.begin(), layout.areas.end(),
                   [](const AreaSpec& a, const AreaSpec& b) {
                     return a.deployment_year < b.deployment_year;
                   });
  return layout;
}

}  // namespace lsasim
