#include "easent/trading.hpp"

#include "easent/error.hpp"

#include <algorithm>
#include <tuple>

namespace easent::trading {

using sentiment::EventPolarity;

const ClassCurves* TradeReturnCurves::find(EventPolarity p) const {
    for (const auto& c : classes) {
        if (c.polarity == p) {
            return &c;
        }
    }
    return nullptr;
}

TradeReturnCurves trade_return_curves(std::span<const study::LabeledEvent> events,
                                      const returns::PriceBook& book, long max_d) {
    if (max_d < 0) {
        throw Error(ErrorKind::InvalidConfig, "max_d must be >= 0");
    }
    std::vector<const study::LabeledEvent*> ordered;
    for (const auto& e : events) {
        ordered.push_back(&e);
    }
    std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
        return std::tie(a->anchor.event.ticker, a->anchor.event.announce_at) <
               std::tie(b->anchor.event.ticker, b->anchor.event.announce_at);
    });

    const auto len = static_cast<std::size_t>(max_d + 1);
    TradeReturnCurves out;
    std::vector<std::vector<double>> sums_stock(3, std::vector<double>(len, 0.0));
    std::vector<std::vector<double>> sums_index(3, std::vector<double>(len, 0.0));
    std::size_t counts[3] = {0, 0, 0};
    bool present[3] = {false, false, false};
    for (const auto* e : ordered) {
        const auto cls = static_cast<std::size_t>(e->polarity);
        present[cls] = true;
        std::vector<double> rs(len);
        std::vector<double> ri(len);
        try {
            const auto& prices = book.stock(e->anchor.event.ticker);
            for (long d = 0; d <= max_d; ++d) {
                rs[static_cast<std::size_t>(d)] = returns::trading_return(e->anchor, prices, d);
                ri[static_cast<std::size_t>(d)] = returns::trading_return(e->anchor, book.index(), d);
            }
        } catch (const Error& err) {
            out.skipped.push_back({e->anchor.event.ticker, e->anchor.event.announce_at, err.what()});
            continue;
        }
        for (std::size_t j = 0; j < len; ++j) {
            sums_stock[cls][j] += rs[j];
            sums_index[cls][j] += ri[j];
        }
        ++counts[cls];
    }
    for (std::size_t c = 0; c < 3; ++c) {
        if (!present[c]) {
            continue;
        }
        const auto pol = static_cast<EventPolarity>(c);
        if (counts[c] == 0) {
            throw Error(ErrorKind::EmptyClass,
                        "no usable events in class " + std::string(sentiment::to_string(pol)));
        }
        ClassCurves cc;
        cc.polarity = pol;
        cc.n = counts[c];
        const double n = static_cast<double>(counts[c]);
        for (std::size_t j = 0; j < len; ++j) {
            cc.d.push_back(static_cast<long>(j));
            cc.stock.push_back(sums_stock[c][j] / n);
            cc.index.push_back(sums_index[c][j] / n);
        }
        out.classes.push_back(std::move(cc));
    }
    return out;
}

double short_net_return(double open_price, double close_price, double spread) {
    return (open_price - close_price - spread) / open_price;
}

TradeLedger run_strategy(std::span<const StrategyEvent> events, const returns::PriceBook& book,
                         const sentiment::PolarityThresholds& prev_day_thresholds,
                         const StrategyConfig& cfg) {
    if (!(cfg.spread >= 0.0)) {
        throw Error(ErrorKind::InvalidConfig, "spread must be >= 0");
    }
    if (cfg.end < cfg.start) {
        throw Error(ErrorKind::InvalidConfig, "backtest end precedes start");
    }
    TradeLedger ledger;
    const auto& prices_index = book.index();
    for (const auto& se : events) {
        const auto& ev = se.anchor.event;
        if (ev.timing != Timing::AfterClose || ev.excluded) {
            continue;
        }
        if (sentiment::categorize_event(se.sent_prev, prev_day_thresholds) !=
            EventPolarity::Negative) {
            continue;
        }
        Date open_date;
        Date close_date;
        try {
            open_date = se.anchor.day(-1);
            close_date = se.anchor.day(0);
        } catch (const Error& err) {
            ledger.skipped.push_back({ev.ticker, ev.announce_at, err.what()});
            continue;
        }
        if (open_date < cfg.start || close_date > cfg.end) {
            continue;
        }
        const auto& prices = book.stock(ev.ticker);
        auto open_px = prices.close(open_date);
        auto close_px = prices.close(close_date);
        if (!open_px || !close_px) {
            ledger.skipped.push_back(
                {ev.ticker, ev.announce_at,
                 "MissingBar: " + ev.ticker.str() + " lacks " +
                     format_date(open_px ? close_date : open_date)});
            continue;
        }
        ledger.trades.push_back(Trade{ev.ticker, ev.announce_at, open_date, close_date, *open_px,
                                      *close_px, cfg.spread,
                                      short_net_return(*open_px, *close_px, cfg.spread)});
    }
    std::sort(ledger.trades.begin(), ledger.trades.end(), [](const Trade& a, const Trade& b) {
        return std::tie(a.open_date, a.ticker, a.announce_at) <
               std::tie(b.open_date, b.ticker, b.announce_at);
    });

    // one equity step per distinct open date; same-date trades share capital equally
    struct Step {
        Date settle;
        double growth;
    };
    std::vector<Step> steps;
    for (std::size_t i = 0; i < ledger.trades.size();) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < ledger.trades.size() && ledger.trades[j].open_date == ledger.trades[i].open_date) {
            sum += ledger.trades[j].net_return;
            ++j;
        }
        steps.push_back({ledger.trades[i].close_date, 1.0 + sum / static_cast<double>(j - i)});
        i = j;
    }

    const auto& cal = book.calendar();
    auto first = cal.first_on_or_after(cfg.start);
    if (!first || cal.at(*first) > cfg.end) {
        return ledger;
    }
    const double base = prices_index.close_or_throw(cal.at(*first), "index");
    double value = 1.0;
    std::size_t next_step = 0;
    for (std::size_t p = *first; p < cal.size() && cal.at(p) <= cfg.end; ++p) {
        const Date d = cal.at(p);
        while (next_step < steps.size() && steps[next_step].settle <= d) {
            value *= steps[next_step].growth;
            ++next_step;
        }
        ledger.equity.push_back({d, value, prices_index.close_or_throw(d, "index") / base});
    }
    return ledger;
}

} // namespace easent::trading
