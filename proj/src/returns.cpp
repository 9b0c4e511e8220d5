#include "easent/returns.hpp"

#include "easent/error.hpp"

#include <algorithm>

namespace easent::returns {

PriceSeries::PriceSeries(std::vector<std::pair<Date, double>> closes) : closes_(std::move(closes)) {
    std::sort(closes_.begin(), closes_.end());
}

PriceSeries PriceSeries::of_bars(std::span<const DailyBar> bars) {
    std::vector<std::pair<Date, double>> v;
    v.reserve(bars.size());
    for (const auto& b : bars) {
        v.emplace_back(b.date, b.close);
    }
    return PriceSeries(std::move(v));
}

PriceSeries PriceSeries::of_index(std::span<const IndexBar> bars) {
    std::vector<std::pair<Date, double>> v;
    v.reserve(bars.size());
    for (const auto& b : bars) {
        v.emplace_back(b.date, b.close);
    }
    return PriceSeries(std::move(v));
}

std::optional<double> PriceSeries::close(Date d) const {
    auto it = std::lower_bound(closes_.begin(), closes_.end(), d,
                               [](const auto& p, Date key) { return p.first < key; });
    if (it == closes_.end() || it->first != d) {
        return std::nullopt;
    }
    return it->second;
}

double PriceSeries::close_or_throw(Date d, const std::string& what) const {
    auto c = close(d);
    if (!c) {
        throw Error(ErrorKind::MissingBar, "no " + what + " bar on " + format_date(d));
    }
    return *c;
}

PriceBook::PriceBook(const Dataset& ds)
    : calendar_(align::TradingCalendar::from_index(ds.index)),
      index_(PriceSeries::of_index(ds.index)) {
    std::map<Ticker, std::vector<std::pair<Date, double>>> grouped;
    for (const auto& b : ds.bars) {
        grouped[b.ticker].emplace_back(b.date, b.close);
    }
    for (auto& [t, v] : grouped) {
        stocks_.emplace(t, PriceSeries(std::move(v)));
    }
}

const PriceSeries& PriceBook::stock(const Ticker& t) const {
    auto it = stocks_.find(t);
    return it == stocks_.end() ? empty_ : it->second;
}

double PriceBook::return_on(const PriceSeries& s, Date d, const std::string& what) const {
    auto prev = calendar_.last_before(d);
    if (!prev) {
        throw Error(ErrorKind::MissingBar, "no trading date before " + format_date(d));
    }
    const double p0 = s.close_or_throw(calendar_.at(*prev), what);
    const double p1 = s.close_or_throw(d, what);
    return (p1 - p0) / p0;
}

double PriceBook::stock_return(const Ticker& t, Date d) const {
    return return_on(stock(t), d, t.str());
}

double PriceBook::index_return(Date d) const { return return_on(index_, d, "index"); }

ReturnSeries daily_returns(std::span<const DailyBar> bars, const align::TradingCalendar& cal) {
    if (bars.size() < 2) {
        throw Error(ErrorKind::TooFewPoints, "daily returns need at least 2 bars");
    }
    ReturnSeries out{bars.front().ticker.str(), {}};
    out.points.reserve(bars.size() - 1);
    for (std::size_t i = 1; i < bars.size(); ++i) {
        const auto& prev = bars[i - 1];
        const auto& cur = bars[i];
        auto prev_pos = cal.position(prev.date);
        auto cur_pos = cal.position(cur.date);
        if (!prev_pos || !cur_pos || *cur_pos != *prev_pos + 1) {
            throw Error(ErrorKind::GapInSeries, cur.ticker.str() + " bars " + format_date(prev.date) +
                                                    " -> " + format_date(cur.date) +
                                                    " are not consecutive trading dates");
        }
        out.points.emplace_back(cur.date, (cur.close - prev.close) / prev.close);
    }
    return out;
}

ReturnSeries index_returns(std::span<const IndexBar> bars) {
    if (bars.size() < 2) {
        throw Error(ErrorKind::TooFewPoints, "index returns need at least 2 bars");
    }
    ReturnSeries out{kIndexMarker, {}};
    out.points.reserve(bars.size() - 1);
    for (std::size_t i = 1; i < bars.size(); ++i) {
        out.points.emplace_back(bars[i].date, (bars[i].close - bars[i - 1].close) / bars[i - 1].close);
    }
    return out;
}

double trading_return(const align::EventAnchor& anchor, const PriceSeries& prices, long d) {
    if (d < -1) {
        throw Error(ErrorKind::OutOfCalendarRange, "trading return horizon must be >= -1");
    }
    const std::string what = anchor.event.ticker.str();
    const double base = prices.close_or_throw(anchor.day(-1), what);
    if (d == -1) {
        return 0.0;
    }
    const double p = prices.close_or_throw(anchor.day(d), what);
    return (p - base) / base;
}

Surprise earnings_surprise(const EarningsEvent& ev) {
    if (ev.eps_estimated == 0.0) {
        throw Error(ErrorKind::ZeroEstimate,
                    ev.ticker.str() + " " + format_rfc3339(ev.announce_at) + " has zero estimate");
    }
    return Surprise{ev.ticker, ev.announce_at,
                    (ev.eps_reported - ev.eps_estimated) / ev.eps_estimated};
}

} // namespace easent::returns
