#include "easent/volume.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace easent;
using namespace easent::testing;

namespace {

struct Fixture {
    std::vector<Date> dates = weekdays(ymd(2014, 1, 6), 10);
    Dataset ds;

    Fixture() {
        ds.index = index_of(dates, std::vector<double>(10, 100.0));
        ds.bars = bars_of("AAA", dates, std::vector<double>(10, 10.0), 100);
        auto b = bars_of("BBB", dates, std::vector<double>(10, 10.0), 300);
        ds.bars.insert(ds.bars.end(), b.begin(), b.end());
        ds.bars[4].volume = 500;  // AAA on its day 0
        // AAA: BeforeOpen on dates[4]; BBB: AfterClose after dates[5] -> day 0 is dates[6]
        ds.events = {event("AAA", eastern::from_local(dates[4], std::chrono::hours{8}), Timing::BeforeOpen),
                     event("BBB", eastern::from_local(dates[5], std::chrono::hours{17}), Timing::AfterClose)};
        ds.tweets = {bucket("AAA", dates[4], 11, 2, 2, 2), bucket("AAA", dates[3], 8, 0, 4, 0),
                     bucket("BBB", dates[6], 10, 1, 1, 0), bucket("BBB", dates[5], 17, 0, 0, 4)};
    }
};

} // namespace

TEST(Volume, MeanAndStandardError) {
    const auto [m, se] = report::mean_and_se({1.0, 2.0, 3.0, 4.0});
    EXPECT_DOUBLE_EQ(m, 2.5);
    EXPECT_NEAR(se, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
    EXPECT_EQ(report::mean_and_se({7.0}).second, 0.0);
    EXPECT_EQ(report::mean_and_se({}).first, 0.0);
}

TEST(Volume, DailyRowsAroundEvents) {
    Fixture f;
    const auto rep = report::volume_report(f.ds, 1);
    EXPECT_EQ(rep.summary.n_events, 2u);
    auto row = [&](const std::string& g, long k) {
        for (const auto& r : rep.daily) {
            if (r.group == g && r.rel_day == k) {
                return r;
            }
        }
        return report::DailyVolumeRow{};
    };
    // AAA day0 6 tweets, BBB day0 2 (10:00) + 4 (17:00 the day before rolls forward) = 6
    EXPECT_DOUBLE_EQ(row("all", 0).mean_tweets, 6.0);
    EXPECT_DOUBLE_EQ(row("all", 0).se_tweets, 0.0);
    EXPECT_DOUBLE_EQ(row("all", 0).mean_volume, 400.0);
    EXPECT_DOUBLE_EQ(row("all", -1).mean_tweets, 2.0);
    EXPECT_DOUBLE_EQ(row("BeforeOpen", 0).mean_volume, 500.0);
    EXPECT_DOUBLE_EQ(row("AfterClose", 0).mean_volume, 300.0);
    EXPECT_EQ(row("AfterClose", 1).n, 1u);
    EXPECT_EQ(rep.daily.size(), 9u);

    // 16 tweets over 20 (ticker, day) bars
    EXPECT_DOUBLE_EQ(rep.summary.mean_tweets_per_day, 16.0 / 20.0);
    EXPECT_DOUBLE_EQ(rep.summary.three_day_multiplier, ((6.0 + 4.0) / 3.0 + (6.0 + 0.0) / 3.0) / 2.0 / 0.8);
}

TEST(Volume, HourlyProfileUsesLocalDates) {
    Fixture f;
    const auto rep = report::volume_report(f.ds, 1);
    EXPECT_EQ(rep.hourly.size(), 3u * 3u * 24u);
    auto hour = [&](const std::string& g, long k, int h) {
        for (const auto& r : rep.hourly) {
            if (r.group == g && r.rel_day == k && r.hour == h) {
                return r.mean_tweets;
            }
        }
        return -1.0;
    };
    EXPECT_DOUBLE_EQ(hour("BeforeOpen", 0, 11), 6.0);
    EXPECT_DOUBLE_EQ(hour("BeforeOpen", -1, 8), 4.0);
    EXPECT_DOUBLE_EQ(hour("AfterClose", -1, 17), 4.0);
    EXPECT_DOUBLE_EQ(hour("all", 0, 10), 1.0);
    EXPECT_DOUBLE_EQ(hour("all", 1, 3), 0.0);
}

TEST(Volume, ExcludedEventsIgnored) {
    Fixture f;
    f.ds.events[0].excluded = true;
    const auto rep = report::volume_report(f.ds, 1);
    EXPECT_EQ(rep.summary.n_events, 1u);
}
