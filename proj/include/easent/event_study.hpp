#pragma once

#include "easent/alignment.hpp"
#include "easent/returns.hpp"
#include "easent/sentiment.hpp"

#include <span>
#include <string>
#include <vector>

namespace easent::study {

struct StudyConfig {
    long window_first = -1;
    long window_last = 10;
    long estimation_window = 120;
    double significance_level = 0.01;  // two-sided

    /// Throws Error(InvalidConfig). The estimation window ends at
    /// window_first - 1, so the two windows never overlap.
    void validate() const;
    std::size_t window_length() const { return static_cast<std::size_t>(window_last - window_first + 1); }
    /// z such that P(|Z| > z) = significance_level; 2.5758 at 1%.
    double critical_value() const;
};

struct MarketModelFit {
    double alpha = 0.0;
    double beta = 0.0;
    double sigma2_eps = 0.0;  // SSR / (L - 2)
    std::size_t n_obs = 0;
};

/// OLS of stock on index returns over the last `cfg.estimation_window`
/// pairs. Both spans are date-aligned and end on the day before the event
/// window. Throws Error(InsufficientHistory) or Error(DegenerateRegressor).
MarketModelFit fit_market_model(std::span<const double> stock_returns,
                                std::span<const double> index_returns, const StudyConfig& cfg);

/// Same fit, pulling returns for day(window_first - L) .. day(window_first - 1).
/// Missing bars surface as Error(InsufficientHistory).
MarketModelFit fit_market_model(const returns::PriceBook& book, const align::EventAnchor& anchor,
                                const StudyConfig& cfg);

/// AR_tau = R_tau - (alpha + beta * Rm_tau) for aligned event-window returns.
std::vector<double> abnormal_returns(const MarketModelFit& fit, std::span<const double> stock_returns,
                                     std::span<const double> index_returns);

/// Abnormal returns over the configured event window. Throws Error(MissingBar).
std::vector<double> abnormal_returns(const MarketModelFit& fit, const returns::PriceBook& book,
                                     const align::EventAnchor& anchor, const StudyConfig& cfg);

struct LabeledEvent {
    align::EventAnchor anchor;
    sentiment::EventPolarity polarity;
};

/// Per-event inputs to the cross-event aggregation.
struct EventAbnormal {
    std::vector<double> ar;  // one per window day
    double sigma2_eps = 0.0;
};

struct ClassStudy {
    sentiment::EventPolarity polarity = sentiment::EventPolarity::Neutral;
    std::size_t n = 0;
    std::vector<long> tau;
    std::vector<double> mean_ar;
    std::vector<double> car;       // CAR(window_first, tau)
    std::vector<double> variance;  // var(CAR(window_first, tau))
    std::vector<double> theta;
    std::vector<bool> significant;
};

struct SkippedEvent {
    Ticker ticker;
    Instant announce_at;
    std::string reason;
};

struct EventStudyResult {
    std::vector<ClassStudy> classes;  // ordered Negative, Neutral, Positive; only classes present
    std::vector<SkippedEvent> skipped;

    const ClassStudy* find(sentiment::EventPolarity p) const;
};

/// Cross-event mean AR, running CAR, its variance and the z statistic for
/// one class. Throws Error(EmptyClass) when `events` is empty.
ClassStudy aggregate_class(sentiment::EventPolarity polarity, std::span<const EventAbnormal> events,
                           const StudyConfig& cfg);

/// Fits every event, aggregates by polarity. Events that cannot be fitted
/// are listed in `skipped`. Input order does not affect the result. Throws
/// Error(EmptyClass) when a labelled class ends up with no usable events.
EventStudyResult aggregate_study(std::span<const LabeledEvent> events, const returns::PriceBook& book,
                                 const StudyConfig& cfg);

} // namespace easent::study
