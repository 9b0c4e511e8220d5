#include "easent/volume.hpp"

#include "easent/alignment.hpp"
#include "easent/error.hpp"
#include "easent/sentiment.hpp"

#include <cmath>
#include <map>
#include <optional>

namespace easent::report {

using namespace std::chrono;

std::pair<double, double> mean_and_se(const std::vector<double>& values) {
    if (values.empty()) {
        return {0.0, 0.0};
    }
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    const double mean = sum / n;
    if (values.size() < 2) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

VolumeReport volume_report(const Dataset& ds, long radius) {
    const auto cal = align::TradingCalendar::from_index(ds.index);
    const sentiment::DailyCountIndex counts(sentiment::daily_counts(ds.tweets, cal));
    std::map<std::pair<Ticker, Date>, double> volume;
    double total_volume = 0.0;
    for (const auto& b : ds.bars) {
        volume.emplace(std::pair{b.ticker, b.date}, static_cast<double>(b.volume));
        total_volume += static_cast<double>(b.volume);
    }
    std::map<std::pair<Ticker, Instant>, double> hourly;
    for (const auto& t : ds.tweets) {
        hourly.emplace(std::pair{t.ticker, t.hour_start}, static_cast<double>(t.total()));
    }

    VolumeReport rep;
    double total_tweets_on_bar_days = 0.0;
    for (const auto& b : ds.bars) {
        total_tweets_on_bar_days += static_cast<double>(counts.get(b.ticker, b.date).total());
    }
    if (!ds.bars.empty()) {
        rep.summary.mean_tweets_per_day = total_tweets_on_bar_days / static_cast<double>(ds.bars.size());
        rep.summary.mean_volume = total_volume / static_cast<double>(ds.bars.size());
    }

    struct Usable {
        Timing timing;
        align::EventAnchor anchor;
    };
    std::vector<Usable> usable;
    for (const auto& ev : ds.events) {
        if (ev.excluded) {
            continue;
        }
        try {
            auto anchor = align::anchor_event(ev, cal);
            // every relative day used below must exist on the calendar
            anchor.day(-radius);
            anchor.day(radius);
            anchor.day(-1);
            anchor.day(1);
            usable.push_back({ev.timing, std::move(anchor)});
        } catch (const Error&) {
        }
    }
    rep.summary.n_events = usable.size();

    const std::pair<std::string, std::optional<Timing>> groups[] = {
        {"all", std::nullopt}, {"AfterClose", Timing::AfterClose}, {"BeforeOpen", Timing::BeforeOpen}};

    std::vector<double> three_day;
    for (const auto& u : usable) {
        double s = 0.0;
        for (long k = -1; k <= 1; ++k) {
            s += static_cast<double>(counts.get(u.anchor.event.ticker, u.anchor.day(k)).total());
        }
        three_day.push_back(s / 3.0);
    }
    if (rep.summary.mean_tweets_per_day > 0.0) {
        rep.summary.three_day_multiplier =
            mean_and_se(three_day).first / rep.summary.mean_tweets_per_day;
    }

    for (const auto& [name, timing] : groups) {
        for (long k = -radius; k <= radius; ++k) {
            std::vector<double> tw;
            std::vector<double> vol;
            for (const auto& u : usable) {
                if (timing && u.timing != *timing) {
                    continue;
                }
                const Date d = u.anchor.day(k);
                const auto& t = u.anchor.event.ticker;
                tw.push_back(static_cast<double>(counts.get(t, d).total()));
                if (auto it = volume.find({t, d}); it != volume.end()) {
                    vol.push_back(it->second);
                }
            }
            const auto [mt, st] = mean_and_se(tw);
            const auto [mv, sv] = mean_and_se(vol);
            rep.daily.push_back({name, k, tw.size(), mt, st, mv, sv});
        }
        for (long k = -1; k <= 1; ++k) {
            for (int h = 0; h < 24; ++h) {
                std::vector<double> tw;
                for (const auto& u : usable) {
                    if (timing && u.timing != *timing) {
                        continue;
                    }
                    const Instant at = eastern::from_local(u.anchor.day(k), hours{h});
                    auto it = hourly.find({u.anchor.event.ticker, at});
                    tw.push_back(it == hourly.end() ? 0.0 : it->second);
                }
                const auto [m, s] = mean_and_se(tw);
                rep.hourly.push_back({name, k, h, tw.size(), m, s});
            }
        }
    }
    return rep;
}

} // namespace easent::report
