#pragma once

#include "easent/event_study.hpp"
#include "easent/returns.hpp"
#include "easent/sentiment.hpp"

#include <span>
#include <vector>

namespace easent::trading {

/// Class-mean trading returns RT_d, d = 0..max_d, for stocks and for the index
/// traded over the same dates.
struct ClassCurves {
    sentiment::EventPolarity polarity = sentiment::EventPolarity::Neutral;
    std::size_t n = 0;
    std::vector<long> d;
    std::vector<double> stock;
    std::vector<double> index;
};

struct TradeReturnCurves {
    std::vector<ClassCurves> classes;  // Negative, Neutral, Positive; only classes present
    std::vector<study::SkippedEvent> skipped;

    const ClassCurves* find(sentiment::EventPolarity p) const;
};

/// Events lacking a bar in day(-1)..day(max_d) are skipped. Throws
/// Error(EmptyClass) when a labelled class has no usable events.
TradeReturnCurves trade_return_curves(std::span<const study::LabeledEvent> events,
                                      const returns::PriceBook& book, long max_d = 10);

/// A short opened at one close and covered at the next, paying `spread`
/// per share once for the round trip.
struct Trade {
    Ticker ticker;
    Instant announce_at;
    Date open_date;
    Date close_date;
    double open_price = 0.0;
    double close_price = 0.0;
    double spread = 0.0;
    double net_return = 0.0;
};

/// (open - close - spread) / open
double short_net_return(double open_price, double close_price, double spread);

struct EquityPoint {
    Date date;
    double strategy = 1.0;
    double benchmark = 1.0;
};

struct TradeLedger {
    std::vector<Trade> trades;
    std::vector<EquityPoint> equity;  // every trading date in [start, end]
    std::vector<study::SkippedEvent> skipped;

    double final_equity() const { return equity.empty() ? 1.0 : equity.back().strategy; }
    double final_benchmark() const { return equity.empty() ? 1.0 : equity.back().benchmark; }
};

struct StrategyConfig {
    double spread = 0.05;
    Date start;
    Date end;
};

struct StrategyEvent {
    align::EventAnchor anchor;
    sentiment::SentimentScore sent_prev;  // Sent(-1)
};

/// Shorts every non-excluded AfterClose event whose Sent(-1) falls in the
/// negative class at day(-1) close and covers at day(0) close; proceeds are
/// fully reinvested. Events opening on the same date split capital equally.
/// Only trades with both legs inside [start, end] are taken.
TradeLedger run_strategy(std::span<const StrategyEvent> events, const returns::PriceBook& book,
                         const sentiment::PolarityThresholds& prev_day_thresholds,
                         const StrategyConfig& cfg);

} // namespace easent::trading
