#pragma once

#include "easent/alignment.hpp"
#include "easent/types.hpp"

#include <string>
#include <vector>

namespace easent::testing {

Date ymd(int y, unsigned m, unsigned d);
Instant utc(int y, unsigned m, unsigned d, int h = 0, int mi = 0, int s = 0);

/// `n` consecutive weekdays starting on or after `start`, skipping `holidays`.
std::vector<Date> weekdays(Date start, std::size_t n, const std::vector<Date>& holidays = {});

std::vector<IndexBar> index_of(const std::vector<Date>& dates, const std::vector<double>& closes);
std::vector<DailyBar> bars_of(const std::string& ticker, const std::vector<Date>& dates,
                              const std::vector<double>& closes, std::int64_t volume = 1000);

/// Price path from a start price and a list of simple returns.
std::vector<double> compound(double start, const std::vector<double>& returns);

EarningsEvent event(const std::string& ticker, Instant at, Timing timing, double rep = 1.0, double est = 1.0);

/// Hour bucket at a US/Eastern wall-clock time.
TweetBucket bucket(const std::string& ticker, Date local_date, int local_hour, std::int64_t neg,
                   std::int64_t neut, std::int64_t pos);

/// Writes `content` to `path`, creating parent directories.
void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

/// Fresh empty directory under the system temp directory.
std::string scratch_dir(const std::string& name);

} // namespace easent::testing
