#include "lsasim/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "lsasim/csv.hpp"
#include "lsasim/error.hpp"

namespace lsasim {


void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCategory::Io, fmt::format("cannot write '{}'", path.string()));
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCategory::Io, fmt::format("write to '{}' failed", path.string()));
}

namespace {

double quantile_of(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  // Nearest-rank.
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
  return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
}

std::string summary_csv(const YearSummary& s) {
  std::ostringstream out;
  out << "scope,kind,n_stations,n_events,n_covered,mean_event_system_impact,"
         "mean_daily_impact_fraction,p50_daily,p95_daily,max_daily\n";
  std::size_t stations = 0;
  for (const auto& a : s.areas) stations += a.n_stations;
  double event_sum = 0.0;
  for (const auto& a : s.areas) event_sum += a.sum_event_system_impact;
  out << "total,all," << stations << ',' << s.total_events << ',' << s.covered_events << ','
      << csv::format_number(s.covered_events == 0
                                ? 0.0
                                : event_sum / static_cast<double>(s.covered_events))
      << ',' << csv::format_number(s.mean_daily_total_fraction()) << ','
      << csv::format_number(quantile_of(s.daily_total_fraction, 0.5)) << ','
      << csv::format_number(quantile_of(s.daily_total_fraction, 0.95)) << ','
      << csv::format_number(quantile_of(s.daily_total_fraction, 1.0)) << '\n';
  for (const auto& a : s.areas) {
    out << a.area_id << ',' << to_string(a.kind) << ',' << a.n_stations << ',' << a.n_events << ','
        << a.n_events << ',' << csv::format_number(a.mean_event_system_impact()) << ','
        << csv::format_number(a.mean_daily_fraction()) << ','
        << csv::format_number(quantile_of(a.daily_fraction, 0.5)) << ','
        << csv::format_number(quantile_of(a.daily_fraction, 0.95)) << ','
        << csv::format_number(quantile_of(a.daily_fraction, 1.0)) << '\n';
  }
  return out.str();
}

}  // namespace

std::vector<std::string> write_run_outputs(const std::filesystem::path& dir,
                                           const SimulationConfig& config,
                                           const RunResult& result) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCategory::Io,
                fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
  }
  std::vector<std::string> names;
  const auto emit = [&](const std::string& name, const std::string& content) {
    write_text_file(dir / name, content);
    names.push_back(name);
  };
  const auto& sc = result.scenario;

  emit("config.resolved", to_text(config));
  {
    std::ostringstream o;
    write_layout_csv(o, sc.network.layout);
    emit("layout.csv", o.str());
  }
  {
    std::ostringstream o;
    write_stations_csv(o, sc.network.stations);
    emit("stations.csv", o.str());
  }
  {
    std::ostringstream o;
    write_profiles_csv(o, sc.network.profiles);
    emit("profiles.csv", o.str());
  }
  {
    std::ostringstream o;
    write_distribution_csv(o, sc.distributions.daily_count);
    emit("daily_count.csv", o.str());
  }
  {
    std::ostringstream o;
    write_hour_histogram_csv(o, sc.distributions.hours);
    emit("hour_histogram.csv", o.str());
  }
  {
    std::ostringstream o;
    write_distribution_csv(o, sc.distributions.duration);
    emit("duration.csv", o.str());
  }
  {
    std::ostringstream o;
    write_impact_header(o);
    for (const auto& d : result.days) {
      for (const auto& r : d.records) write_impact_row(o, r);
    }
    emit("events.csv", o.str());
  }
  {
    std::ostringstream days;
    std::ostringstream areas;
    days << "year,day,n_events,n_covered,total_impact_fraction\n";
    areas << "year,day,area_id,n_events,impact_mbps_h,system_impact_fraction\n";
    for (const auto& d : result.days) {
      days << d.year << ',' << d.day << ',' << d.records.size() << ',' << d.n_covered << ','
           << csv::format_number(d.total_impact_fraction) << '\n';
      for (const auto& a : d.areas) {
        areas << d.year << ',' << d.day << ',' << a.area_id << ',' << a.n_events << ','
              << csv::format_number(a.impact_mbps_h) << ','
              << csv::format_number(a.system_impact_fraction) << '\n';
      }
    }
    emit("days.csv", days.str());
    emit("area_days.csv", areas.str());
  }
  {
    std::ostringstream o;
    o << "year,kind,hour,n_events,sum_cell_impact_mbps_h,sum_system_impact,n_days\n";
    for (const auto& y : result.years) {
      for (const auto* bins : {&y.industrial_by_hour, &y.residential_by_hour}) {
        const auto kind = bins == &y.industrial_by_hour ? AreaKind::Industrial
                                                        : AreaKind::Residential;
        for (std::size_t h = 0; h < bins->size(); ++h) {
          const auto& b = (*bins)[h];
          o << y.year << ',' << to_string(kind) << ',' << h << ',' << b.n_events << ','
            << csv::format_number(b.sum_cell_impact_mbps_h) << ','
            << csv::format_number(b.sum_system_impact) << ',' << y.daily_total_fraction.size()
            << '\n';
        }
      }
    }
    emit("impact_by_hour.csv", o.str());
  }
  for (const auto& y : result.years) {
    emit(fmt::format("summary_year_{}.csv", y.year), summary_csv(y));
  }
  return names;
}

const std::vector<std::string>& figure_file_names() {
  static const std::vector<std::string> names{
      "traffic_profiles.dat", "daily_count_cdf.dat", "hour_probability.dat",
      "duration_cdf.dat", "industrial_impact.dat", "residential_impact.dat",
      "total_impact_cdf.dat"};
  return names;
}

namespace {

csv::Table open_artifact(const std::filesystem::path& dir, const std::string& name,
                         const std::vector<std::string_view>& columns) {
  const auto path = dir / name;
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCategory::Input,
                fmt::format("missing run artefact '{}' in '{}'", name, dir.string()));
  }
  return csv::Table::read_file(path, columns);
}

void cdf_block(std::ostream& out, const EmpiricalDistribution& d) {
  for (std::size_t i = 0; i < d.support().size(); ++i) {
    out << csv::format_number(d.support()[i]) << ' ' << csv::format_number(d.cdf()[i]) << '\n';
  }
}

std::string impact_figure(const csv::Table& table, AreaKind kind) {
  struct Acc {
    double n = 0, cell = 0, sys = 0;
  };
  std::array<Acc, 24> bins{};
  std::map<int, double> days_per_year;
  for (const auto& row : table.rows()) {
    if (parse_area_kind(table.field(row, "kind")) != kind) continue;
    const auto h = static_cast<std::size_t>(table.integer(row, "hour"));
    if (h >= 24) table.fail(row, "hour out of range");
    bins[h].n += static_cast<double>(table.integer(row, "n_events"));
    bins[h].cell += table.number(row, "sum_cell_impact_mbps_h");
    bins[h].sys += table.number(row, "sum_system_impact");
    days_per_year[static_cast<int>(table.integer(row, "year"))] =
        static_cast<double>(table.integer(row, "n_days"));
  }
  double days = 0.0;
  for (const auto& [y, n] : days_per_year) days += n;

  std::ostringstream out;
  out << "# " << to_string(kind) << " area impact by event start hour, pooled over years\n";
  out << "# block 0: hour, mean cell impact per event [Mbps h]\n";
  for (std::size_t h = 0; h < 24; ++h) {
    out << h << ' ' << csv::format_number(bins[h].n > 0 ? bins[h].cell / bins[h].n : 0.0) << '\n';
  }
  out << "\n\n# block 1: hour, mean system impact per event [fraction of daily capacity]\n";
  for (std::size_t h = 0; h < 24; ++h) {
    out << h << ' ' << csv::format_number(bins[h].n > 0 ? bins[h].sys / bins[h].n : 0.0) << '\n';
  }
  out << "\n\n# block 2: hour, expected system impact per simulated day from events starting "
         "in that hour\n";
  for (std::size_t h = 0; h < 24; ++h) {
    out << h << ' ' << csv::format_number(days > 0 ? bins[h].sys / days : 0.0) << '\n';
  }
  return out.str();
}

}  // namespace

std::vector<std::filesystem::path> export_figures(const std::filesystem::path& run_dir,
                                                  const std::filesystem::path& out_dir) {
  const auto profiles_table = open_artifact(run_dir, "profiles.csv", {"kind", "hour", "mbps"});
  const auto daily_table = open_artifact(run_dir, "daily_count.csv", {"support", "cdf"});
  const auto hour_table = open_artifact(run_dir, "hour_histogram.csv", {"hour", "p"});
  const auto duration_table = open_artifact(run_dir, "duration.csv", {"support", "cdf"});
  const auto impact_table =
      open_artifact(run_dir, "impact_by_hour.csv",
                    {"year", "kind", "hour", "n_events", "sum_cell_impact_mbps_h",
                     "sum_system_impact", "n_days"});
  const auto days_table = open_artifact(run_dir, "days.csv", {"year", "day", "total_impact_fraction"});

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorCategory::Io,
                fmt::format("cannot create '{}': {}", out_dir.string(), ec.message()));
  }
  const auto& names = figure_file_names();
  std::vector<std::filesystem::path> written;
  const auto emit = [&](std::size_t i, const std::string& content) {
    write_text_file(out_dir / names[i], content);
    written.push_back(out_dir / names[i]);
  };

  const auto reread = [&](const csv::Table& t) {
    std::vector<double> s;
    std::vector<double> c;
    for (const auto& row : t.rows()) {
      s.push_back(t.number(row, "support"));
      c.push_back(t.number(row, "cdf"));
    }
    return EmpiricalDistribution(std::move(s), std::move(c));
  };

  {
    std::array<std::array<double, 24>, 2> v{};
    for (const auto& row : profiles_table.rows()) {
      const auto k = parse_area_kind(profiles_table.field(row, "kind")) == AreaKind::Industrial ? 0 : 1;
      const auto h = profiles_table.integer(row, "hour");
      if (h < 0 || h > 23) profiles_table.fail(row, "hour out of range");
      v[static_cast<std::size_t>(k)][static_cast<std::size_t>(h)] = profiles_table.number(row, "mbps");
    }
    std::ostringstream out;
    out << "# block 0: hour, industrial traffic [Mbps]\n";
    for (std::size_t h = 0; h < 24; ++h) out << h << ' ' << csv::format_number(v[0][h]) << '\n';
    out << "\n\n# block 1: hour, residential traffic [Mbps]\n";
    for (std::size_t h = 0; h < 24; ++h) out << h << ' ' << csv::format_number(v[1][h]) << '\n';
    emit(0, out.str());
  }
  {
    std::ostringstream out;
    out << "# events per day, CDF\n";
    cdf_block(out, reread(daily_table));
    emit(1, out.str());
  }
  {
    std::array<double, 24> p{};
    for (const auto& row : hour_table.rows()) {
      const auto h = hour_table.integer(row, "hour");
      if (h < 0 || h > 23) hour_table.fail(row, "hour out of range");
      p[static_cast<std::size_t>(h)] = hour_table.number(row, "p");
    }
    const HourHistogram hist(p);  // validates normalisation
    std::ostringstream out;
    out << "# hour of day, probability of an event starting in that hour\n";
    for (std::size_t h = 0; h < 24; ++h) out << h << ' ' << csv::format_number(hist.p()[h]) << '\n';
    emit(2, out.str());
  }
  {
    std::ostringstream out;
    out << "# attending time [min], CDF\n";
    cdf_block(out, reread(duration_table));
    emit(3, out.str());
  }
  emit(4, impact_figure(impact_table, AreaKind::Industrial));
  emit(5, impact_figure(impact_table, AreaKind::Residential));
  {
    std::map<int, std::vector<double>> per_year;
    for (const auto& row : days_table.rows()) {
      per_year[static_cast<int>(days_table.integer(row, "year"))].push_back(
          days_table.number(row, "total_impact_fraction"));
    }
    std::ostringstream out;
    bool first = true;
    for (const auto& [year, values] : per_year) {
      if (!first) out << "\n\n";
      first = false;
      out << "# year " << year << ": daily total impact fraction, CDF\n";
      cdf_block(out, EmpiricalDistribution::from_samples(values));
    }
    emit(6, out.str());
  }
  return written;
}

}  // namespace lsasim
