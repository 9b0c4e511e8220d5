#include "easent/synth.hpp"

#include "easent/alignment.hpp"
#include "easent/error.hpp"
#include "easent/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

namespace easent::synth {

using namespace std::chrono;
using sentiment::EventPolarity;

void SynthSpec::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidSpec, msg); };
    if (tickers < 1 || tickers > 676) {
        fail("tickers must be in [1, 676]");
    }
    if (warmup < 123) {
        fail("warmup must leave room for a 120-day estimation window (>= 123)");
    }
    if (tail < 10) {
        fail("tail must cover the 10-day post-event window");
    }
    if (days < warmup + tail + 1) {
        fail("days must exceed warmup + tail");
    }
    if (event_spacing < 1) {
        fail("event_spacing must be >= 1");
    }
    if (!alphas.empty() && alphas.size() != static_cast<std::size_t>(tickers)) {
        fail("alphas must have one entry per ticker");
    }
    if (!betas.empty() && betas.size() != static_cast<std::size_t>(tickers)) {
        fail("betas must have one entry per ticker");
    }
    if (index_vol < 0.0 || idio_vol < 0.0 || surprise_noise < 0.0) {
        fail("volatilities must be >= 0");
    }
    if (!(initial_price > 0.0) || !(initial_index > 0.0) || !(eps_base > 0.0)) {
        fail("initial levels must be > 0");
    }
    if (after_close_fraction < 0.0 || after_close_fraction > 1.0) {
        fail("after_close_fraction must be in [0, 1]");
    }
    if (tweets_per_day < 0.0 || event_multiplier < 0.0 || base_volume < 0.0 ||
        volume_multiplier < 0.0) {
        fail("rates and multipliers must be >= 0");
    }
    if (p_negative < 0.0 || p_positive < 0.0 || sentiment_coupling < 0.0) {
        fail("tweet label probabilities must be >= 0");
    }
    // the day-0 shift moves mass between p_pos and p_neg, so both must stay >= 0
    if (p_negative + p_positive > 1.0 || sentiment_coupling > p_negative ||
        sentiment_coupling > p_positive) {
        fail("need p_negative + p_positive <= 1 and coupling <= min(p_negative, p_positive)");
    }
}

namespace {

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out) {
    if (auto it = j.find(key); it != j.end()) {
        it->get_to(out);
    }
}

Date parse_json_date(const nlohmann::json& v) {
    auto d = parse_date(v.get<std::string>());
    if (!d) {
        throw Error(ErrorKind::InvalidSpec, "bad date '" + v.get<std::string>() + "'");
    }
    return *d;
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "seed", "tickers", "days", "start_date", "holidays", "alpha", "beta", "alphas", "betas",
        "index_vol", "idio_vol", "initial_price", "initial_index", "jump_negative", "jump_neutral",
        "jump_positive", "warmup", "tail", "event_spacing", "after_close_fraction",
        "tweets_per_day", "event_multiplier", "p_negative", "p_positive", "sentiment_coupling",
        "base_volume", "volume_multiplier", "eps_base", "surprise_bias", "surprise_coupling",
        "surprise_noise"};
    return keys;
}

} // namespace

void to_json(nlohmann::json& j, const SynthSpec& s) {
    std::vector<std::string> holidays;
    for (auto d : s.holidays) {
        holidays.push_back(format_date(d));
    }
    j = nlohmann::json{{"seed", s.seed},
                       {"tickers", s.tickers},
                       {"days", s.days},
                       {"start_date", format_date(s.start_date)},
                       {"holidays", holidays},
                       {"alpha", s.alpha},
                       {"beta", s.beta},
                       {"alphas", s.alphas},
                       {"betas", s.betas},
                       {"index_vol", s.index_vol},
                       {"idio_vol", s.idio_vol},
                       {"initial_price", s.initial_price},
                       {"initial_index", s.initial_index},
                       {"jump_negative", s.jump_negative},
                       {"jump_neutral", s.jump_neutral},
                       {"jump_positive", s.jump_positive},
                       {"warmup", s.warmup},
                       {"tail", s.tail},
                       {"event_spacing", s.event_spacing},
                       {"after_close_fraction", s.after_close_fraction},
                       {"tweets_per_day", s.tweets_per_day},
                       {"event_multiplier", s.event_multiplier},
                       {"p_negative", s.p_negative},
                       {"p_positive", s.p_positive},
                       {"sentiment_coupling", s.sentiment_coupling},
                       {"base_volume", s.base_volume},
                       {"volume_multiplier", s.volume_multiplier},
                       {"eps_base", s.eps_base},
                       {"surprise_bias", s.surprise_bias},
                       {"surprise_coupling", s.surprise_coupling},
                       {"surprise_noise", s.surprise_noise}};
}

void from_json(const nlohmann::json& j, SynthSpec& s) {
    if (!j.is_object()) {
        throw Error(ErrorKind::InvalidSpec, "synth spec must be a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        if (!known_keys().contains(key)) {
            throw Error(ErrorKind::InvalidSpec, "unknown synth spec key '" + key + "'");
        }
    }
    try {
        read(j, "seed", s.seed);
        read(j, "tickers", s.tickers);
        read(j, "days", s.days);
        if (auto it = j.find("start_date"); it != j.end()) {
            s.start_date = parse_json_date(*it);
        }
        if (auto it = j.find("holidays"); it != j.end()) {
            s.holidays.clear();
            for (const auto& v : *it) {
                s.holidays.push_back(parse_json_date(v));
            }
        }
        read(j, "alpha", s.alpha);
        read(j, "beta", s.beta);
        read(j, "alphas", s.alphas);
        read(j, "betas", s.betas);
        read(j, "index_vol", s.index_vol);
        read(j, "idio_vol", s.idio_vol);
        read(j, "initial_price", s.initial_price);
        read(j, "initial_index", s.initial_index);
        read(j, "jump_negative", s.jump_negative);
        read(j, "jump_neutral", s.jump_neutral);
        read(j, "jump_positive", s.jump_positive);
        read(j, "warmup", s.warmup);
        read(j, "tail", s.tail);
        read(j, "event_spacing", s.event_spacing);
        read(j, "after_close_fraction", s.after_close_fraction);
        read(j, "tweets_per_day", s.tweets_per_day);
        read(j, "event_multiplier", s.event_multiplier);
        read(j, "p_negative", s.p_negative);
        read(j, "p_positive", s.p_positive);
        read(j, "sentiment_coupling", s.sentiment_coupling);
        read(j, "base_volume", s.base_volume);
        read(j, "volume_multiplier", s.volume_multiplier);
        read(j, "eps_base", s.eps_base);
        read(j, "surprise_bias", s.surprise_bias);
        read(j, "surprise_coupling", s.surprise_coupling);
        read(j, "surprise_noise", s.surprise_noise);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidSpec, e.what());
    }
}

std::string synthetic_ticker(int i) {
    std::string t = "S";
    t.push_back(static_cast<char>('A' + (i / 26) % 26));
    t.push_back(static_cast<char>('A' + i % 26));
    return t;
}

namespace {

double class_sign(EventPolarity p) {
    switch (p) {
    case EventPolarity::Negative: return -1.0;
    case EventPolarity::Neutral: return 0.0;
    case EventPolarity::Positive: return 1.0;
    }
    return 0.0;
}

std::vector<Date> build_calendar(const SynthSpec& spec) {
    const std::set<Date> holidays(spec.holidays.begin(), spec.holidays.end());
    std::vector<Date> dates;
    dates.reserve(static_cast<std::size_t>(spec.days));
    for (Date d = spec.start_date; static_cast<int>(dates.size()) < spec.days; d += days{1}) {
        if (!is_weekend(d) && !holidays.contains(d)) {
            dates.push_back(d);
        }
    }
    return dates;
}

struct Scheduled {
    int ticker;
    int day0;  // calendar position
    Timing timing;
    EventPolarity polarity = EventPolarity::Neutral;
};

} // namespace

SynthOutput generate_with_truth(const SynthSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const std::vector<Date> dates = build_calendar(spec);
    const align::TradingCalendar cal(dates);
    const int n_days = spec.days;
    const int n_tickers = spec.tickers;

    std::vector<Ticker> tickers;
    for (int i = 0; i < n_tickers; ++i) {
        tickers.emplace_back(synthetic_ticker(i));
    }
    const int n_after_close =
        static_cast<int>(std::lround(spec.after_close_fraction * static_cast<double>(n_tickers)));
    auto timing_of = [&](int i) { return i < n_after_close ? Timing::AfterClose : Timing::BeforeOpen; };

    // schedule: ticker i starts at a staggered offset, then every event_spacing days
    std::vector<Scheduled> events;
    for (int i = 0; i < n_tickers; ++i) {
        const int offset = spec.warmup + (i * spec.event_spacing) / n_tickers;
        for (int p = offset; p + spec.tail < n_days; p += spec.event_spacing) {
            events.push_back({i, p, timing_of(i)});
        }
    }
    std::sort(events.begin(), events.end(), [](const Scheduled& a, const Scheduled& b) {
        return std::tie(a.day0, a.ticker) < std::tie(b.day0, b.ticker);
    });
    // balanced classes within each timing group, shuffled
    for (Timing timing : {Timing::AfterClose, Timing::BeforeOpen}) {
        std::vector<Scheduled*> group;
        for (auto& e : events) {
            if (e.timing == timing) {
                group.push_back(&e);
            }
        }
        std::vector<EventPolarity> classes;
        for (std::size_t k = 0; k < group.size(); ++k) {
            classes.push_back(static_cast<EventPolarity>(k % 3));
        }
        for (std::size_t k = classes.size(); k > 1; --k) {
            std::swap(classes[k - 1], classes[rng.below(k)]);
        }
        for (std::size_t k = 0; k < group.size(); ++k) {
            group[k]->polarity = classes[k];
        }
    }

    // per (ticker, day) lookups of the event schedule
    std::map<std::pair<int, int>, const Scheduled*> day0_of;
    std::set<std::pair<int, int>> elevated;
    for (const auto& e : events) {
        day0_of[{e.ticker, e.day0}] = &e;
        for (int k = -1; k <= 1; ++k) {
            elevated.insert({e.ticker, e.day0 + k});
        }
    }
    auto jump_of = [&](EventPolarity p) {
        switch (p) {
        case EventPolarity::Negative: return spec.jump_negative;
        case EventPolarity::Neutral: return spec.jump_neutral;
        case EventPolarity::Positive: return spec.jump_positive;
        }
        return 0.0;
    };

    SynthOutput out;
    Dataset& ds = out.dataset;

    // prices: index first, then each ticker in order, day by day
    std::vector<double> price(static_cast<std::size_t>(n_tickers), spec.initial_price);
    double level = spec.initial_index;
    for (int t = 0; t < n_days; ++t) {
        const Date d = dates[static_cast<std::size_t>(t)];
        double rm = 0.0;
        if (t > 0) {
            rm = spec.index_vol * rng.normal();
            level *= 1.0 + std::max(rm, -0.95);
        }
        ds.index.push_back({d, level});
        for (int i = 0; i < n_tickers; ++i) {
            const double a = spec.alphas.empty() ? spec.alpha : spec.alphas[static_cast<std::size_t>(i)];
            const double b = spec.betas.empty() ? spec.beta : spec.betas[static_cast<std::size_t>(i)];
            auto& p = price[static_cast<std::size_t>(i)];
            if (t > 0) {
                double r = a + b * rm + spec.idio_vol * rng.normal();
                if (auto it = day0_of.find({i, t}); it != day0_of.end()) {
                    r += jump_of(it->second->polarity);
                }
                p *= 1.0 + std::max(r, -0.95);
            }
            const double vol_mult = elevated.contains({i, t}) ? spec.volume_multiplier : 1.0;
            const double v = spec.base_volume * vol_mult * std::exp(0.25 * rng.normal() - 0.03125);
            ds.bars.push_back({tickers[static_cast<std::size_t>(i)], d, p, std::llround(v)});
        }
    }

    // hourly tweet buckets spanning local midnight of the first date to the last close
    const Instant first_hour = eastern::from_local(dates.front(), seconds{0});
    const Instant last_close = align::TradingCalendar::close_of(dates.back());
    std::vector<Instant> hours_list;
    std::vector<int> hour_day;
    std::vector<int> hours_per_day(static_cast<std::size_t>(n_days), 0);
    for (Instant h = first_hour; h <= last_close; h += hours{1}) {
        const Date d = align::close_delimited_day(h, cal);
        const int pos = static_cast<int>(*cal.position(d));
        hours_list.push_back(h);
        hour_day.push_back(pos);
        ++hours_per_day[static_cast<std::size_t>(pos)];
    }
    for (int i = 0; i < n_tickers; ++i) {
        for (std::size_t h = 0; h < hours_list.size(); ++h) {
            const int pos = hour_day[h];
            double rate = spec.tweets_per_day / hours_per_day[static_cast<std::size_t>(pos)];
            if (elevated.contains({i, pos})) {
                rate *= spec.event_multiplier;
            }
            double p_neg = spec.p_negative;
            double p_pos = spec.p_positive;
            if (auto it = day0_of.find({i, pos}); it != day0_of.end()) {
                const double s = class_sign(it->second->polarity);
                p_pos += spec.sentiment_coupling * s;
                p_neg -= spec.sentiment_coupling * s;
            }
            const double p_neut = 1.0 - p_neg - p_pos;
            TweetBucket b{tickers[static_cast<std::size_t>(i)], hours_list[h]};
            b.n_neg = rng.poisson(rate * p_neg);
            b.n_neut = rng.poisson(rate * p_neut);
            b.n_pos = rng.poisson(rate * p_pos);
            if (b.total() > 0) {
                ds.tweets.push_back(std::move(b));
            }
        }
    }

    // announcements and earnings
    for (const auto& e : events) {
        const Date day0 = dates[static_cast<std::size_t>(e.day0)];
        const Instant at =
            e.timing == Timing::AfterClose
                ? eastern::from_local(dates[static_cast<std::size_t>(e.day0 - 1)], hours{16} + minutes{30})
                : eastern::from_local(day0, hours{8});
        const double est = spec.eps_base * (0.5 + rng.uniform());
        const double es = spec.surprise_bias + spec.surprise_coupling * class_sign(e.polarity) +
                          spec.surprise_noise * rng.normal();
        const Ticker& t = tickers[static_cast<std::size_t>(e.ticker)];
        ds.events.push_back({t, at, e.timing, est * (1.0 + es), est, false, {}});
        out.planted.push_back({t, at, e.timing, day0, e.polarity, jump_of(e.polarity)});
    }

    canonicalize(ds);
    std::sort(out.planted.begin(), out.planted.end(), [](const PlantedEvent& a, const PlantedEvent& b) {
        return std::tie(a.ticker, a.announce_at) < std::tie(b.ticker, b.announce_at);
    });
    return out;
}

Dataset generate(const SynthSpec& spec) { return generate_with_truth(spec).dataset; }

} // namespace easent::synth
