#pragma once

#include "easent/types.hpp"

#include <string>
#include <vector>

namespace easent::report {

/// Per relative day around announcements: mean tweets and mean share volume
/// with standard errors (sample sd / sqrt N) across events.
struct DailyVolumeRow {
    std::string group;  // all, AfterClose, BeforeOpen
    long rel_day = 0;
    std::size_t n = 0;
    double mean_tweets = 0.0;
    double se_tweets = 0.0;
    double mean_volume = 0.0;
    double se_volume = 0.0;
};

/// Mean tweets per local wall-clock hour on the local dates of days -1..+1.
struct HourlyRow {
    std::string group;
    long rel_day = 0;
    int hour = 0;  // US/Eastern
    std::size_t n = 0;
    double mean_tweets = 0.0;
    double se_tweets = 0.0;
};

struct VolumeSummary {
    std::size_t n_events = 0;
    double mean_tweets_per_day = 0.0;   // over every (ticker, trading day) with a bar
    double three_day_multiplier = 0.0;  // mean daily tweets on days -1..+1 over the overall mean
    double mean_volume = 0.0;           // over every bar
};

struct VolumeReport {
    std::vector<DailyVolumeRow> daily;
    std::vector<HourlyRow> hourly;
    VolumeSummary summary;
};

/// Uses non-excluded events only; `radius` bounds the relative days of the
/// daily table.
VolumeReport volume_report(const Dataset& ds, long radius = 2);

/// Sample mean and standard error, 0 SE for fewer than two values.
std::pair<double, double> mean_and_se(const std::vector<double>& values);

} // namespace easent::report
