#include "lsasim/events.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lsasim/error.hpp"
#include "lsasim/rng.hpp"
#include "lsasim/synthetic.hpp"
#include "test_support.hpp"

namespace lsasim {
namespace {

EventLogEntry entry(std::string id, CalendarDate date, std::string type, double minutes,
                    std::int64_t pumps, double minute_of_day = 600.0) {
  EventLogEntry e;
  e.event_id = std::move(id);
  e.date = date;
  e.minute_of_day = minute_of_day;
  e.event_type = std::move(type);
  e.attending_min = minutes;
  e.pump_count = pumps;
  return e;
}

TEST(Parsing, Dates) {
  EXPECT_EQ(parse_date("2017-03-03"), (CalendarDate{2017, 3, 3}));
  EXPECT_EQ(parse_date("2016-02-29"), (CalendarDate{2016, 2, 29}));
  EXPECT_FALSE(parse_date("2017-02-29"));
  EXPECT_FALSE(parse_date("2017-13-01"));
  EXPECT_FALSE(parse_date("17-03-03"));
}

TEST(Parsing, TimesAndMonthDays) {
  EXPECT_EQ(parse_time_of_day("00:00"), 0.0);
  EXPECT_EQ(parse_time_of_day("19:45"), 19 * 60.0 + 45);
  EXPECT_EQ(parse_time_of_day("07:30:30"), 450.5);
  EXPECT_FALSE(parse_time_of_day("24:00"));
  EXPECT_FALSE(parse_time_of_day("7:30"));
  EXPECT_EQ(parse_month_day("11-05"), (MonthDay{11, 5}));
  EXPECT_THROW((void)parse_month_day("11/05"), Error);
  EXPECT_THROW((void)parse_month_day("02-30"), Error);
}

TEST(CleanEventLog, StandardFilters) {
  const CleanupConfig cfg;
  const std::vector<EventLogEntry> rows{
      entry("a", {2017, 11, 5}, "Fire", 30, 1),
      entry("b", {2017, 3, 3}, "Fire", 30, 0),
      entry("c", {2017, 3, 3}, "Fire", 30, 2),
  };
  const auto out = clean_event_log(rows, cfg);
  ASSERT_EQ(out.entries.size(), 1u);
  EXPECT_EQ(out.entries[0].event_id, "c");
  EXPECT_EQ(out.report.dropped_date, 1u);
  EXPECT_EQ(out.report.dropped_pumps, 1u);
}

TEST(CleanEventLog, KnownViolationsCountedExactly) {
  // Constructed ground truth: each violation class appears a known number of times.
  std::vector<EventLogEntry> rows;
  CleanupReport expected;
  int id = 0;
  const auto add = [&](CalendarDate d, const char* type, double minutes, std::int64_t pumps) {
    rows.push_back(entry(std::to_string(id++), d, type, minutes, pumps));
  };
  for (int i = 0; i < 40; ++i) add({2017, 4, 1 + i % 28}, i % 2 ? "fire" : "Flooding", 45, 1);
  expected.retained_rows = 40;
  for (int i = 0; i < 7; ++i) add({2017, 4, 2}, "False alarm", 10, 1);
  expected.dropped_type = 7;
  for (int y = 2014; y < 2018; ++y) {
    add({y, 1, 1}, "Fire", 30, 1);
    add({y, 11, 5}, "Fire", 30, 2);
    add({y, 12, 31}, "Flooding", 30, 1);
  }
  // Excluded date and zero pumps: charged to the date rule.
  add({2017, 11, 5}, "Fire", 30, 0);
  expected.dropped_date = 13;
  for (int i = 0; i < 5; ++i) add({2017, 6, 6}, "Fire", 30, 0);
  add({2017, 6, 6}, "Fire", 30, -1);
  expected.dropped_pumps = 6;
  add({2017, 6, 7}, "Fire", 0, 1);
  expected.dropped_duration = 1;
  expected.input_rows = rows.size();

  const auto out = clean_event_log(rows, {});
  EXPECT_EQ(out.report, expected);
  for (const auto& e : out.entries) {
    EXPECT_GE(e.pump_count, 1);
    EXPECT_GT(e.attending_min, 0.0);
  }
}

TEST(CleanEventLog, Idempotent) {
  std::vector<EventLogEntry> rows;
  Rng rng(9);
  const char* types[] = {"Fire", "Flooding", "RTC", "fire "};
  for (int i = 0; i < 500; ++i) {
    const int m = 1 + static_cast<int>(rng.uniform() * 12);
    rows.push_back(entry(std::to_string(i), {2016, m, m == 11 ? 5 : 1 + i % 28},
                         types[i % 4], rng.uniform(0, 100), static_cast<int>(rng.uniform() * 3)));
  }
  const auto once = clean_event_log(rows, {});
  const auto twice = clean_event_log(once.entries, {});
  ASSERT_EQ(once.entries.size(), twice.entries.size());
  for (std::size_t i = 0; i < once.entries.size(); ++i) {
    EXPECT_EQ(once.entries[i].event_id, twice.entries[i].event_id);
  }
  EXPECT_EQ(twice.report.retained_rows, twice.report.input_rows);
}

TEST(CleanEventLog, EmptyResultIsError) {
  const std::vector<EventLogEntry> rows{entry("x", {2017, 1, 1}, "Fire", 10, 1)};
  EXPECT_THROW((void)clean_event_log(rows, {}), Error);
}

TEST(EventDuration, MeanOfAttendingTimes) {
  EXPECT_EQ(event_duration(std::vector<double>{60}), 60.0);
  EXPECT_EQ(event_duration(std::vector<double>{60, 120}), 90.0);
  EXPECT_EQ(event_duration(std::vector<double>{30, 30, 30, 30}), 30.0);
  EXPECT_THROW((void)event_duration(std::vector<double>{}), Error);
}

TEST(GroupEvents, PerPumpRowsAreAveraged) {
  const std::vector<EventLogEntry> rows{
      entry("e1", {2017, 3, 3}, "Fire", 60, 2, 100),
      entry("e2", {2017, 3, 3}, "Fire", 10, 1, 200),
      entry("e1", {2017, 3, 3}, "Fire", 120, 2, 110),
  };
  const auto per_pump = group_events(rows, GroupingMode::PerPump);
  ASSERT_EQ(per_pump.size(), 2u);
  EXPECT_EQ(per_pump[0].event_id, "e1");
  EXPECT_EQ(per_pump[0].duration_min, 90.0);
  EXPECT_EQ(per_pump[0].minute_of_day, 100.0);
  EXPECT_EQ(per_pump[1].duration_min, 10.0);
  EXPECT_EQ(group_events(rows, GroupingMode::PerEvent).size(), 3u);
}

TEST(ReadEventLog, ParsesAndReportsBadRows) {
  std::istringstream good(
      "event_id,date,time,event_type,attending_min,pump_count\n"
      "1,2017-03-03,19:05,Fire,42.5,2\n");
  const auto rows = read_event_log(good, "log.csv");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].minute_of_day, 19 * 60.0 + 5);
  EXPECT_EQ(rows[0].attending_min, 42.5);
  EXPECT_EQ(rows[0].pump_count, 2);

  std::istringstream bad(
      "event_id,date,time,event_type,attending_min,pump_count\n"
      "1,2017-03-03,19:05,Fire,42.5,2\n"
      "2,2017-03-32,19:05,Fire,42.5,2\n");
  try {
    (void)read_event_log(bad, "log.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("log.csv:3"), std::string::npos) << e.what();
  }
}

TEST(BuildDistributions, SmallHandBuiltLog) {
  std::vector<LoggedEvent> events{
      {"a", {2017, 3, 3}, 19 * 60.0 + 1, 10},
      {"b", {2017, 3, 3}, 19 * 60.0 + 30, 20},
      {"c", {2017, 3, 3}, 19 * 60.0 + 59, 20},
      {"d", {2017, 3, 4}, 19 * 60.0, 40},
  };
  const auto d = build_distributions(events);
  EXPECT_EQ(d.daily_count.support(), (std::vector<double>{1, 3}));
  EXPECT_EQ(d.daily_count.cdf(), (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(d.hours.p()[19], 1.0);
  EXPECT_EQ(d.duration.support(), (std::vector<double>{10, 20, 40}));
  EXPECT_EQ(d.duration.cdf(), (std::vector<double>{0.25, 0.75, 1.0}));
}

TEST(EmpiricalDistribution, ValidatesInvariants) {
  EXPECT_THROW(EmpiricalDistribution({}, {}), Error);
  EXPECT_THROW(EmpiricalDistribution({1, 2}, {1.0}), Error);
  EXPECT_THROW(EmpiricalDistribution({2, 1}, {0.5, 1.0}), Error);
  EXPECT_THROW(EmpiricalDistribution({1, 2}, {0.6, 0.5}), Error);
  EXPECT_THROW(EmpiricalDistribution({1, 2}, {0.5, 0.9}), Error);
  EXPECT_NO_THROW(EmpiricalDistribution({1, 2}, {0.5, 1.0 - 1e-13}));
}

TEST(EmpiricalDistribution, CdfStepsAreMultiplesOfOneOverN) {
  Rng rng(6);
  std::vector<double> xs(997);
  for (auto& x : xs) x = std::floor(rng.uniform(0, 50));
  const auto d = EmpiricalDistribution::from_samples(xs);
  for (double c : d.cdf()) {
    const double k = c * 997.0;
    EXPECT_NEAR(k, std::round(k), 1e-9);
  }
  EXPECT_EQ(d.cdf().back(), 1.0);
}

TEST(EmpiricalDistribution, SamplingBoundaries) {
  const EmpiricalDistribution single({7}, {1.0});
  Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(single.sample(rng), 7.0);
  const EmpiricalDistribution two({1, 2}, {0.25, 1.0});
  EXPECT_EQ(two.quantile(1.0), 2.0);
  EXPECT_EQ(two.quantile(0.25), 1.0);
  EXPECT_EQ(two.quantile(0.2500001), 2.0);
  EXPECT_EQ(two.cdf_at(0.5), 0.0);
  EXPECT_EQ(two.cdf_at(1.5), 0.25);
  EXPECT_EQ(two.cdf_at(2.0), 1.0);
}

TEST(EmpiricalDistribution, BernoulliFrequency) {
  const EmpiricalDistribution two({1, 2}, {0.25, 1.0});
  Rng rng(2);
  int ones = 0;
  const int n = 100'000;
  for (int i = 0; i < n; ++i) ones += two.sample(rng) == 1.0;
  EXPECT_NEAR(static_cast<double>(ones) / n, 0.25, 0.005);
}

TEST(EmpiricalDistribution, SampleMeanWithinThreeStandardErrors) {
  const auto d = synthetic::durations();
  double m2 = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < d.support().size(); ++i) {
    m2 += d.support()[i] * d.support()[i] * (d.cdf()[i] - prev);
    prev = d.cdf()[i];
  }
  const double var = m2 - d.mean() * d.mean();
  Rng rng(10);
  const int n = 100'000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += d.sample(rng);
  EXPECT_NEAR(sum / n, d.mean(), 3.0 * std::sqrt(var / n));
}

TEST(EmpiricalDistribution, MillionSamplesPassKs) {
  const auto d = synthetic::durations();
  Rng rng(11);
  const int n = 1'000'000;
  std::vector<double> xs(n);
  for (auto& x : xs) x = d.sample(rng);
  const auto e = EmpiricalDistribution::from_samples(xs);
  double ks = 0.0;
  for (double x : d.support()) ks = std::max(ks, std::fabs(e.cdf_at(x) - d.cdf_at(x)));
  EXPECT_LT(ks, testing::ks_critical_001(n));
}

TEST(HourHistogram, Validation) {
  std::array<double, 24> p{};
  p[3] = 1.0;
  EXPECT_NO_THROW(HourHistogram{p});
  p[4] = 0.1;
  EXPECT_THROW(HourHistogram{p}, Error);
  p[4] = -0.1;
  p[5] = 0.1;
  EXPECT_THROW(HourHistogram{p}, Error);
  EXPECT_THROW((void)HourHistogram::from_counts({}), Error);
}

TEST(SampleDay, ForcedZeroIsEmpty) {
  const auto d = synthetic::distributions();
  Rng t(1);
  Rng l(2);
  EXPECT_TRUE(sample_day(d, CityExtent{}, 0, t, l, 0).empty());
}

TEST(SampleDay, MillionEventsMatchAreaRatioAndHours) {
  const auto d = synthetic::distributions();
  AreaSpec ia;
  ia.kind = AreaKind::Industrial;
  ia.center = {5, 5};
  Rng t(3);
  Rng l(4);
  const auto events = sample_day(d, CityExtent{}, 0, t, l, 1'000'000);
  ASSERT_EQ(events.size(), 1'000'000u);
  std::size_t in_ia = 0;
  std::array<double, 24> hours{};
  for (const auto& e : events) {
    ASSERT_GE(e.start_min, 0.0);
    ASSERT_LT(e.start_min, kMinutesPerDay);
    ASSERT_GT(e.duration_min, 0.0);
    in_ia += ia.contains(e.location);
    hours[static_cast<std::size_t>(e.start_min / 60.0)] += 1;
  }
  EXPECT_NEAR(static_cast<double>(in_ia) / 1e6, 0.08, 0.003);
  for (std::size_t h = 0; h < 24; ++h) {
    const double p = d.hours.p()[h];
    EXPECT_NEAR(hours[h] / 1e6, p, 3.0 * std::sqrt(p * (1 - p) / 1e6)) << "hour " << h;
  }
}

TEST(SampleDay, LocationsIndependentOfTimingStream) {
  const auto d = synthetic::distributions();
  Rng t1(1);
  Rng t2(999);
  Rng l1(5);
  Rng l2(5);
  const auto a = sample_day(d, CityExtent{}, 0, t1, l1, 200);
  const auto b = sample_day(d, CityExtent{}, 0, t2, l2, 200);
  bool timing_differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].location, b[i].location);
    timing_differs |= a[i].start_min != b[i].start_min;
  }
  EXPECT_TRUE(timing_differs);
}

TEST(SampleDay, DailyCountMeanMatchesSynthetic) {
  const auto d = synthetic::distributions();
  EXPECT_NEAR(d.daily_count.mean(), synthetic::kDailyEventMean, 1e-6);
  EXPECT_EQ(d.duration.max(), synthetic::kMaxDurationMin);
}

TEST(DistributionCsv, RoundTrips) {
  const auto d = synthetic::distributions();
  std::stringstream s;
  write_distribution_csv(s, d.duration);
  const auto back = read_distribution_csv(s, "duration.csv");
  EXPECT_EQ(back.support(), d.duration.support());
  EXPECT_EQ(back.cdf(), d.duration.cdf());
  std::stringstream h;
  write_hour_histogram_csv(h, d.hours);
  EXPECT_EQ(read_hour_histogram_csv(h, "hours.csv").p(), d.hours.p());
}

}  // namespace
}  // namespace lsasim
