#include "easent/sentiment.hpp"

#include "easent/error.hpp"

#include <algorithm>
#include <cmath>

namespace easent::sentiment {

std::string_view to_string(EventPolarity p) {
    switch (p) {
    case EventPolarity::Negative: return "negative";
    case EventPolarity::Neutral: return "neutral";
    case EventPolarity::Positive: return "positive";
    }
    return "unknown";
}

std::vector<DailyTweetCounts> daily_counts(std::span<const TweetBucket> tweets,
                                           const align::TradingCalendar& cal) {
    std::map<std::pair<Ticker, Date>, DailyTweetCounts> acc;
    for (const auto& b : tweets) {
        const Date d = align::close_delimited_day(b.hour_start, cal);
        auto [it, inserted] = acc.try_emplace({b.ticker, d}, DailyTweetCounts{b.ticker, d});
        it->second.n_neg += b.n_neg;
        it->second.n_neut += b.n_neut;
        it->second.n_pos += b.n_pos;
    }
    std::vector<DailyTweetCounts> out;
    out.reserve(acc.size());
    for (auto& [key, c] : acc) {
        out.push_back(std::move(c));
    }
    return out;
}

SentimentScore sentiment_score(std::int64_t n_neg, std::int64_t n_neut, std::int64_t n_pos) {
    const double num = static_cast<double>(n_pos - n_neg);
    const double den = static_cast<double>(n_pos + n_neut + n_neg + 3);
    return SentimentScore{num / den};
}

SentimentScore sentiment_score(const DailyTweetCounts& c) {
    return sentiment_score(c.n_neg, c.n_neut, c.n_pos);
}

double sentiment_polarity_score(std::int64_t n_neg, std::int64_t n_pos) {
    if (n_neg + n_pos == 0) {
        throw Error(ErrorKind::ZeroDenominator, "no polar tweets");
    }
    return static_cast<double>(n_pos - n_neg) / static_cast<double>(n_pos + n_neg);
}

PolarityThresholds tercile_thresholds(std::span<const SentimentScore> scores) {
    const std::size_t n = scores.size();
    if (n < 3) {
        throw Error(ErrorKind::TooFewEvents,
                    "tercile thresholds need at least 3 scores, got " + std::to_string(n));
    }
    std::vector<double> sorted;
    sorted.reserve(n);
    for (auto s : scores) {
        sorted.push_back(s.value());
    }
    std::sort(sorted.begin(), sorted.end());
    const std::size_t low_rank = (n + 2) / 3;       // ceil(n/3)
    const std::size_t high_rank = (2 * n + 2) / 3;  // ceil(2n/3)
    return PolarityThresholds{sorted[low_rank - 1], sorted[high_rank - 1], n};
}

EventPolarity categorize_event(SentimentScore score, const PolarityThresholds& th) {
    if (score.value() <= th.t_low) {
        return EventPolarity::Negative;
    }
    if (score.value() <= th.t_high) {
        return EventPolarity::Neutral;
    }
    return EventPolarity::Positive;
}

EventPolarity categorize_event_by_surprise(double es, double cutoff) {
    if (es > cutoff) {
        return EventPolarity::Positive;
    }
    if (es < -cutoff) {
        return EventPolarity::Negative;
    }
    return EventPolarity::Neutral;
}

DailyCountIndex::DailyCountIndex(const std::vector<DailyTweetCounts>& counts) {
    for (const auto& c : counts) {
        counts_.emplace(std::pair{c.ticker, c.trading_date}, c);
    }
}

DailyTweetCounts DailyCountIndex::get(const Ticker& ticker, Date d) const {
    auto it = counts_.find({ticker, d});
    if (it == counts_.end()) {
        return DailyTweetCounts{ticker, d};
    }
    return it->second;
}

} // namespace easent::sentiment
