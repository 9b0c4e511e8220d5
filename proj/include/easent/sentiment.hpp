#pragma once

#include "easent/alignment.hpp"
#include "easent/types.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace easent::sentiment {

struct DailyTweetCounts {
    Ticker ticker;
    Date trading_date;
    std::int64_t n_neg = 0;
    std::int64_t n_neut = 0;
    std::int64_t n_pos = 0;

    std::int64_t total() const { return n_neg + n_neut + n_pos; }
};

/// Laplace-smoothed mean of the {-1, 0, +1} label distribution; always in (-1, 1).
class SentimentScore {
public:
    constexpr SentimentScore() = default;
    constexpr explicit SentimentScore(double v) : value_(v) {}
    constexpr double value() const { return value_; }
    friend constexpr auto operator<=>(SentimentScore, SentimentScore) = default;

private:
    double value_ = 0.0;
};

enum class EventPolarity { Negative = 0, Neutral = 1, Positive = 2 };

std::string_view to_string(EventPolarity p);

/// Tercile cuts for one (timing, relative day) stratum. Class intervals are
/// (-1, t_low], (t_low, t_high], (t_high, 1).
struct PolarityThresholds {
    double t_low = 0.0;
    double t_high = 0.0;
    std::size_t n = 0;
};

/// Close-delimited roll-up of hourly buckets, ordered by (ticker, date).
/// Days without tweets are absent.
std::vector<DailyTweetCounts> daily_counts(std::span<const TweetBucket> tweets,
                                           const align::TradingCalendar& cal);

SentimentScore sentiment_score(std::int64_t n_neg, std::int64_t n_neut, std::int64_t n_pos);
SentimentScore sentiment_score(const DailyTweetCounts& c);

/// (pos - neg) / (pos + neg), ignoring neutral tweets. Throws Error(ZeroDenominator).
double sentiment_polarity_score(std::int64_t n_neg, std::int64_t n_pos);

/// t_low is the ceil(n/3)-th smallest score, t_high the ceil(2n/3)-th.
/// Throws Error(TooFewEvents) for fewer than three scores.
PolarityThresholds tercile_thresholds(std::span<const SentimentScore> scores);

EventPolarity categorize_event(SentimentScore score, const PolarityThresholds& th);

EventPolarity categorize_event_by_surprise(double es, double cutoff = 0.025);

/// Lookup of daily counts by (ticker, trading date); missing days read as zero.
class DailyCountIndex {
public:
    DailyCountIndex() = default;
    explicit DailyCountIndex(const std::vector<DailyTweetCounts>& counts);

    DailyTweetCounts get(const Ticker& ticker, Date d) const;

private:
    std::map<std::pair<Ticker, Date>, DailyTweetCounts> counts_;
};

} // namespace easent::sentiment
