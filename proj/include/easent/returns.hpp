#pragma once

#include "easent/alignment.hpp"
#include "easent/types.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace easent::returns {

inline constexpr const char* kIndexMarker = "^INDEX";

/// Simple (raw) returns, one per bar after the first.
struct ReturnSeries {
    std::string ticker;
    std::vector<std::pair<Date, double>> points;
};

/// Closing prices of one instrument keyed by date.
class PriceSeries {
public:
    PriceSeries() = default;
    explicit PriceSeries(std::vector<std::pair<Date, double>> closes);
    static PriceSeries of_bars(std::span<const DailyBar> bars);
    static PriceSeries of_index(std::span<const IndexBar> bars);

    std::optional<double> close(Date d) const;
    /// Throws Error(MissingBar).
    double close_or_throw(Date d, const std::string& what) const;
    const std::vector<std::pair<Date, double>>& points() const { return closes_; }

private:
    std::vector<std::pair<Date, double>> closes_;
};

/// Per-ticker price lookups plus the index, built once from a Dataset.
class PriceBook {
public:
    explicit PriceBook(const Dataset& ds);

    const PriceSeries& stock(const Ticker& t) const;  // empty series when unknown
    const PriceSeries& index() const { return index_; }
    const align::TradingCalendar& calendar() const { return calendar_; }

    /// Return on trading date `d` relative to the previous trading date.
    /// Throws Error(MissingBar) when either close is absent.
    double stock_return(const Ticker& t, Date d) const;
    double index_return(Date d) const;

private:
    double return_on(const PriceSeries& s, Date d, const std::string& what) const;

    align::TradingCalendar calendar_;
    std::map<Ticker, PriceSeries> stocks_;
    PriceSeries index_;
    PriceSeries empty_;
};

/// r_d = (p_d - p_{d-1}) / p_{d-1} over consecutive bars. Throws Error(GapInSeries)
/// when consecutive bars skip a trading date, Error(TooFewPoints) for < 2 bars.
ReturnSeries daily_returns(std::span<const DailyBar> bars, const align::TradingCalendar& cal);
ReturnSeries index_returns(std::span<const IndexBar> bars);

/// RT_d = (p_{day(d)} - p_{day(-1)}) / p_{day(-1)}; zero for d = -1.
double trading_return(const align::EventAnchor& anchor, const PriceSeries& prices, long d);

struct Surprise {
    Ticker ticker;
    Instant announce_at;
    double es;
};

/// ES = (p_rep - p_est) / p_est. Throws Error(ZeroEstimate).
Surprise earnings_surprise(const EarningsEvent& ev);

} // namespace easent::returns
