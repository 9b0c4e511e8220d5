#include "easent/pipeline.hpp"

#include "easent/csv.hpp"
#include "easent/error.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace easent::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;
using sentiment::EventPolarity;

namespace {

const std::set<std::string>& config_keys() {
    static const std::set<std::string> keys = {
        "data_dir", "prices", "index", "tweets", "events", "out_dir", "event_window_first",
        "event_window_last", "estimation_window", "significance_level", "polarity_day", "timing",
        "max_d", "volume_radius", "surprise_cutoff", "spread", "backtest_from", "backtest_to",
        "threshold_end", "seed"};
    return keys;
}

Date config_date(const json& v, const char* key) {
    auto d = parse_date(v.get<std::string>());
    if (!d) {
        throw Error(ErrorKind::InvalidConfig, std::string(key) + ": bad date '" + v.get<std::string>() + "'");
    }
    return *d;
}

std::optional<Timing> parse_timing_filter(const std::string& s) {
    if (s == "afterclose" || s == "AfterClose") {
        return Timing::AfterClose;
    }
    if (s == "beforeopen" || s == "BeforeOpen") {
        return Timing::BeforeOpen;
    }
    if (s == "both" || s.empty()) {
        return std::nullopt;
    }
    throw Error(ErrorKind::InvalidConfig, "timing must be afterclose, beforeopen or both");
}

std::string fmt(double v) { return csv::format_double(v); }

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    return s == "-0.00" ? "0.00" : s;
}

class CsvText {
public:
    explicit CsvText(std::vector<std::string> header) { csv::write_row(os_, header); }
    void row(const std::vector<std::string>& fields) { csv::write_row(os_, fields); }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

std::string read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::MissingFile, "cannot open " + p.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

ingest::DatasetPaths RunConfig::paths() const {
    auto p = ingest::DatasetPaths::in_directory(data_dir);
    if (prices_path) p.prices = *prices_path;
    if (index_path) p.index = *index_path;
    if (tweets_path) p.tweets = *tweets_path;
    if (events_path) p.events = *events_path;
    return p;
}

void RunConfig::validate() const {
    try {
        study.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::InvalidConfig, e.what());
    }
    if (polarity_day != 0 && polarity_day != -1) {
        throw Error(ErrorKind::InvalidConfig, "polarity day must be 0 or -1");
    }
    if (max_d < 0 || max_d > study.window_last) {
        throw Error(ErrorKind::InvalidConfig, "max_d must lie in [0, event window end]");
    }
    if (volume_radius < 1) {
        throw Error(ErrorKind::InvalidConfig, "volume radius must be >= 1");
    }
    if (!(spread >= 0.0)) {
        throw Error(ErrorKind::InvalidConfig, "spread must be >= 0");
    }
    if (!(surprise_cutoff >= 0.0)) {
        throw Error(ErrorKind::InvalidConfig, "surprise cutoff must be >= 0");
    }
    if (backtest_from && backtest_to && *backtest_to < *backtest_from) {
        throw Error(ErrorKind::InvalidConfig, "backtest end precedes start");
    }
}

void to_json(json& j, const RunConfig& c) {
    j = json{{"data_dir", c.data_dir.string()},
             {"out_dir", c.out_dir.string()},
             {"event_window_first", c.study.window_first},
             {"event_window_last", c.study.window_last},
             {"estimation_window", c.study.estimation_window},
             {"significance_level", c.study.significance_level},
             {"polarity_day", c.polarity_day},
             {"timing", c.timing ? (*c.timing == Timing::AfterClose ? "afterclose" : "beforeopen") : "both"},
             {"max_d", c.max_d},
             {"volume_radius", c.volume_radius},
             {"surprise_cutoff", c.surprise_cutoff},
             {"spread", c.spread},
             {"seed", c.seed}};
    if (c.prices_path) j["prices"] = c.prices_path->string();
    if (c.index_path) j["index"] = c.index_path->string();
    if (c.tweets_path) j["tweets"] = c.tweets_path->string();
    if (c.events_path) j["events"] = c.events_path->string();
    if (c.backtest_from) j["backtest_from"] = format_date(*c.backtest_from);
    if (c.backtest_to) j["backtest_to"] = format_date(*c.backtest_to);
    if (c.threshold_end) j["threshold_end"] = format_date(*c.threshold_end);
}

void from_json(const json& j, RunConfig& c) {
    if (!j.is_object()) {
        throw Error(ErrorKind::InvalidConfig, "config must be a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        if (!config_keys().contains(key)) {
            throw Error(ErrorKind::InvalidConfig, "unknown config key '" + key + "'");
        }
    }
    try {
        if (j.contains("data_dir")) c.data_dir = j.at("data_dir").get<std::string>();
        if (j.contains("prices")) c.prices_path = j.at("prices").get<std::string>();
        if (j.contains("index")) c.index_path = j.at("index").get<std::string>();
        if (j.contains("tweets")) c.tweets_path = j.at("tweets").get<std::string>();
        if (j.contains("events")) c.events_path = j.at("events").get<std::string>();
        if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
        if (j.contains("event_window_first")) j.at("event_window_first").get_to(c.study.window_first);
        if (j.contains("event_window_last")) j.at("event_window_last").get_to(c.study.window_last);
        if (j.contains("estimation_window")) j.at("estimation_window").get_to(c.study.estimation_window);
        if (j.contains("significance_level")) j.at("significance_level").get_to(c.study.significance_level);
        if (j.contains("polarity_day")) j.at("polarity_day").get_to(c.polarity_day);
        if (j.contains("timing")) c.timing = parse_timing_filter(j.at("timing").get<std::string>());
        if (j.contains("max_d")) j.at("max_d").get_to(c.max_d);
        if (j.contains("volume_radius")) j.at("volume_radius").get_to(c.volume_radius);
        if (j.contains("surprise_cutoff")) j.at("surprise_cutoff").get_to(c.surprise_cutoff);
        if (j.contains("spread")) j.at("spread").get_to(c.spread);
        if (j.contains("backtest_from")) c.backtest_from = config_date(j.at("backtest_from"), "backtest_from");
        if (j.contains("backtest_to")) c.backtest_to = config_date(j.at("backtest_to"), "backtest_to");
        if (j.contains("threshold_end")) c.threshold_end = config_date(j.at("threshold_end"), "threshold_end");
        if (j.contains("seed")) j.at("seed").get_to(c.seed);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidConfig, e.what());
    }
}

RunConfig load_config(const fs::path& path) {
    const std::string text = read_bytes(path);
    RunConfig c;
    try {
        from_json(json::parse(text), c);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::InvalidConfig, path.string() + ": " + e.what());
    }
    return c;
}

std::string Stratum::label() const {
    return std::string(timing == Timing::AfterClose ? "afterclose" : "beforeopen") + "_day" +
           std::to_string(day);
}

Analysis::Analysis(const Dataset& ds, const RunConfig& cfg)
    : cfg_(cfg),
      ds_(ingest::apply_coverage(ds, ingest::CoverageOptions{cfg.study.estimation_window,
                                                             cfg.study.window_first,
                                                             cfg.study.window_last})),
      cal_(align::TradingCalendar::from_index(ds_.index)),
      book_(ds_),
      daily_(sentiment::daily_counts(ds_.tweets, cal_)) {
    cfg_.validate();
    const sentiment::DailyCountIndex counts(daily_);
    const auto coverage = ingest::validate_event_coverage(ds_, ingest::CoverageOptions{
                                                                  cfg.study.estimation_window,
                                                                  cfg.study.window_first,
                                                                  cfg.study.window_last});
    for (std::size_t i = 0; i < ds_.events.size(); ++i) {
        EventRecord rec{ds_.events[i], coverage[i].second, std::nullopt, {}, {}, std::nullopt};
        try {
            rec.anchor = align::anchor_event(rec.event, cal_);
            rec.sent0 = sentiment::sentiment_score(counts.get(rec.event.ticker, rec.anchor->day0()));
            rec.sent_prev = sentiment::sentiment_score(counts.get(rec.event.ticker, rec.anchor->day(-1)));
        } catch (const Error&) {
            // left unanchored; coverage already marked it excluded
        }
        if (rec.event.eps_estimated != 0.0) {
            rec.es = returns::earnings_surprise(rec.event).es;
        }
        events_.push_back(std::move(rec));
    }
}

sentiment::PolarityThresholds Analysis::thresholds(const Stratum& s) const {
    std::vector<sentiment::SentimentScore> scores;
    for (const auto& e : events_) {
        if (!e.usable() || e.event.timing != s.timing) {
            continue;
        }
        if (cfg_.threshold_end && e.anchor->day0() > *cfg_.threshold_end) {
            continue;
        }
        scores.push_back(e.sent(s.day));
    }
    try {
        return sentiment::tercile_thresholds(scores);
    } catch (const Error& e) {
        throw Error(e.kind(), s.label() + ": " + e.what());
    }
}

std::vector<study::LabeledEvent> Analysis::labeled(const Stratum& s,
                                                   const sentiment::PolarityThresholds& th) const {
    std::vector<study::LabeledEvent> out;
    for (const auto& e : events_) {
        if (e.usable() && e.event.timing == s.timing) {
            out.push_back({*e.anchor, sentiment::categorize_event(e.sent(s.day), th)});
        }
    }
    return out;
}

study::EventStudyResult Analysis::study(const Stratum& s) const {
    const auto ev = labeled(s, thresholds(s));
    return study::aggregate_study(ev, book_, cfg_.study);
}

trading::TradeReturnCurves Analysis::curves(const Stratum& s) const {
    const auto ev = labeled(s, thresholds(s));
    return trading::trade_return_curves(ev, book_, cfg_.max_d);
}

trading::TradeLedger Analysis::backtest() const {
    const auto th = thresholds({Timing::AfterClose, -1});
    std::vector<trading::StrategyEvent> ev;
    for (const auto& e : events_) {
        if (e.usable() && e.event.timing == Timing::AfterClose) {
            ev.push_back({*e.anchor, e.sent_prev});
        }
    }
    if (cal_.empty()) {
        throw Error(ErrorKind::OutOfCalendarRange, "empty calendar");
    }
    trading::StrategyConfig sc{cfg_.spread, cfg_.backtest_from.value_or(cal_.front()),
                               cfg_.backtest_to.value_or(cal_.back())};
    return trading::run_strategy(ev, book_, th, sc);
}

regression::RegressionFit Analysis::regress(const Stratum& s) const {
    std::vector<std::pair<double, double>> pairs;
    for (const auto& e : events_) {
        if (e.usable() && e.es && e.event.timing == s.timing) {
            pairs.emplace_back(e.sent(s.day).value(), *e.es);
        }
    }
    return regression::fit_es_regression(pairs, s.label());
}

report::VolumeReport Analysis::volume() const { return report::volume_report(ds_, cfg_.volume_radius); }

std::string calendar_csv(const align::TradingCalendar& cal) {
    CsvText t({"date"});
    for (auto d : cal.dates()) {
        t.row({format_date(d)});
    }
    return t.str();
}

std::string score_csv(const std::vector<sentiment::DailyTweetCounts>& daily) {
    CsvText t({"ticker", "trading_date", "n_neg", "n_neut", "n_pos", "sent"});
    for (const auto& c : daily) {
        t.row({c.ticker.str(), format_date(c.trading_date), std::to_string(c.n_neg),
               std::to_string(c.n_neut), std::to_string(c.n_pos),
               fmt(sentiment::sentiment_score(c).value())});
    }
    return t.str();
}

std::string thresholds_csv(const std::map<Stratum, sentiment::PolarityThresholds>& th) {
    CsvText t({"stratum", "timing", "day", "t_low", "t_high", "n"});
    for (const auto& s : kStrata) {
        auto it = th.find(s);
        if (it == th.end()) {
            continue;
        }
        t.row({s.label(), std::string(to_string(s.timing)), std::to_string(s.day), fmt(it->second.t_low),
               fmt(it->second.t_high), std::to_string(it->second.n)});
    }
    return t.str();
}

std::string thresholds_table_csv(const std::map<Stratum, sentiment::PolarityThresholds>& th) {
    std::vector<std::string> header{"polarity"};
    std::vector<const sentiment::PolarityThresholds*> cols;
    for (const auto& s : kStrata) {
        if (auto it = th.find(s); it != th.end()) {
            header.push_back(s.label());
            cols.push_back(&it->second);
        }
    }
    CsvText t(header);
    const EventPolarity order[] = {EventPolarity::Negative, EventPolarity::Neutral, EventPolarity::Positive};
    for (auto p : order) {
        std::vector<std::string> row{std::string(sentiment::to_string(p))};
        for (const auto* c : cols) {
            switch (p) {
            case EventPolarity::Negative: row.push_back("(-1, " + fixed2(c->t_low) + "]"); break;
            case EventPolarity::Neutral:
                row.push_back("(" + fixed2(c->t_low) + ", " + fixed2(c->t_high) + "]");
                break;
            case EventPolarity::Positive: row.push_back("(" + fixed2(c->t_high) + ", 1)"); break;
            }
        }
        t.row(row);
    }
    return t.str();
}

std::string returns_csv(const Dataset& ds, const align::TradingCalendar& cal) {
    CsvText t({"ticker", "date", "r"});
    for (std::size_t i = 0; i < ds.bars.size();) {
        std::size_t j = i;
        while (j < ds.bars.size() && ds.bars[j].ticker == ds.bars[i].ticker) {
            ++j;
        }
        if (j - i >= 2) {
            const auto series = returns::daily_returns(std::span(ds.bars).subspan(i, j - i), cal);
            for (const auto& [d, r] : series.points) {
                t.row({series.ticker, format_date(d), fmt(r)});
            }
        }
        i = j;
    }
    if (ds.index.size() >= 2) {
        const auto series = returns::index_returns(ds.index);
        for (const auto& [d, r] : series.points) {
            t.row({series.ticker, format_date(d), fmt(r)});
        }
    }
    return t.str();
}

std::string surprise_csv(const std::vector<EventRecord>& events) {
    CsvText t({"ticker", "announce_at", "es"});
    for (const auto& e : events) {
        if (e.es) {
            t.row({e.event.ticker.str(), format_rfc3339(e.event.announce_at), fmt(*e.es)});
        }
    }
    return t.str();
}

std::string study_csv(const study::EventStudyResult& r) {
    CsvText t({"tau", "class", "N", "car", "var", "theta", "significant"});
    if (r.classes.empty()) {
        return t.str();
    }
    const std::size_t len = r.classes.front().tau.size();
    for (std::size_t j = 0; j < len; ++j) {
        for (const auto& c : r.classes) {
            t.row({std::to_string(c.tau[j]), std::string(sentiment::to_string(c.polarity)),
                   std::to_string(c.n), fmt(c.car[j]), fmt(c.variance[j]), fmt(c.theta[j]),
                   c.significant[j] ? "1" : "0"});
        }
    }
    return t.str();
}

std::string curves_csv(const trading::TradeReturnCurves& c) {
    CsvText t({"d", "class", "N", "stock_rt", "index_rt"});
    if (c.classes.empty()) {
        return t.str();
    }
    const std::size_t len = c.classes.front().d.size();
    for (std::size_t j = 0; j < len; ++j) {
        for (const auto& k : c.classes) {
            t.row({std::to_string(k.d[j]), std::string(sentiment::to_string(k.polarity)),
                   std::to_string(k.n), fmt(k.stock[j]), fmt(k.index[j])});
        }
    }
    return t.str();
}

std::string trades_csv(const trading::TradeLedger& l) {
    CsvText t({"ticker", "open_date", "close_date", "open_px", "close_px", "net_return"});
    for (const auto& tr : l.trades) {
        t.row({tr.ticker.str(), format_date(tr.open_date), format_date(tr.close_date), fmt(tr.open_price),
               fmt(tr.close_price), fmt(tr.net_return)});
    }
    return t.str();
}

std::string equity_csv(const trading::TradeLedger& l) {
    CsvText t({"date", "strategy", "benchmark"});
    for (const auto& p : l.equity) {
        t.row({format_date(p.date), fmt(p.strategy), fmt(p.benchmark)});
    }
    return t.str();
}

std::string regression_csv(const std::vector<regression::RegressionFit>& fits) {
    CsvText t({"stratum", "slope", "intercept", "r2", "n"});
    for (const auto& f : fits) {
        t.row({f.stratum, fmt(f.slope), fmt(f.intercept), fmt(f.r_squared), std::to_string(f.n)});
    }
    return t.str();
}

std::string volume_daily_csv(const report::VolumeReport& r) {
    CsvText t({"group", "rel_day", "n_events", "mean_tweets", "se_tweets", "mean_volume", "se_volume"});
    for (const auto& d : r.daily) {
        t.row({d.group, std::to_string(d.rel_day), std::to_string(d.n), fmt(d.mean_tweets),
               fmt(d.se_tweets), fmt(d.mean_volume), fmt(d.se_volume)});
    }
    return t.str();
}

std::string volume_hourly_csv(const report::VolumeReport& r) {
    CsvText t({"group", "rel_day", "hour_local", "n_events", "mean_tweets", "se_tweets"});
    for (const auto& h : r.hourly) {
        t.row({h.group, std::to_string(h.rel_day), std::to_string(h.hour), std::to_string(h.n),
               fmt(h.mean_tweets), fmt(h.se_tweets)});
    }
    return t.str();
}

std::string volume_summary_csv(const report::VolumeReport& r) {
    CsvText t({"metric", "value"});
    t.row({"n_events", std::to_string(r.summary.n_events)});
    t.row({"mean_tweets_per_day", fmt(r.summary.mean_tweets_per_day)});
    t.row({"three_day_multiplier", fmt(r.summary.three_day_multiplier)});
    t.row({"mean_volume", fmt(r.summary.mean_volume)});
    return t.str();
}

std::string events_csv(const std::vector<EventRecord>& events) {
    CsvText t({"ticker", "announce_at_utc", "timing", "day0", "day0_tweets", "sent0", "sent_prev", "es",
               "excluded", "reason"});
    for (const auto& e : events) {
        t.row({e.event.ticker.str(), format_rfc3339(e.event.announce_at),
               std::string(to_string(e.event.timing)), e.anchor ? format_date(e.anchor->day0()) : "",
               std::to_string(e.coverage.day0_tweets), e.anchor ? fmt(e.sent0.value()) : "",
               e.anchor ? fmt(e.sent_prev.value()) : "", e.es ? fmt(*e.es) : "",
               e.event.excluded ? "1" : "0", e.event.exclusion_reason});
    }
    return t.str();
}

std::string ingest_report_csv(const ingest::LoadReport& r) {
    CsvText t({"file", "row", "line", "kind", "column", "message"});
    for (const auto& d : r.diagnostics) {
        t.row({d.file, std::to_string(d.row), std::to_string(d.line), std::string(to_string(d.kind)),
               d.column, d.message});
    }
    return t.str();
}

std::map<Stratum, sentiment::PolarityThresholds> all_thresholds(const Analysis& a,
                                                                std::vector<std::string>* skipped) {
    std::map<Stratum, sentiment::PolarityThresholds> out;
    for (const auto& s : kStrata) {
        try {
            out.emplace(s, a.thresholds(s));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::TooFewEvents || skipped == nullptr) {
                throw;
            }
            skipped->push_back(e.what());
        }
    }
    return out;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorKind::Io, "sha256 failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

std::string sha256_file(const fs::path& path) { return sha256_hex(read_bytes(path)); }

void write_outputs(const fs::path& dir, const std::map<std::string, std::string>& files) {
    fs::create_directories(dir);
    const fs::path staging = dir / ".staging";
    fs::remove_all(staging);
    fs::create_directories(staging);
    try {
        for (const auto& [name, content] : files) {
            std::ofstream out(staging / name, std::ios::binary | std::ios::trunc);
            out << content;
            out.close();
            if (!out) {
                throw Error(ErrorKind::Io, "cannot write " + (staging / name).string());
            }
        }
        for (const auto& [name, content] : files) {
            fs::rename(staging / name, dir / name);
        }
    } catch (...) {
        std::error_code ec;
        fs::remove_all(staging, ec);
        throw;
    }
    fs::remove_all(staging);
}

PipelineResult run_pipeline(const RunConfig& cfg) {
    cfg.validate();
    const auto paths = cfg.paths();
    const ingest::DatasetText text{read_bytes(paths.prices), read_bytes(paths.index),
                                   read_bytes(paths.tweets), read_bytes(paths.events)};
    const Dataset ds = ingest::load_dataset(text);
    const Analysis a(ds, cfg);

    PipelineResult res;
    std::vector<std::string> skipped;
    const auto th = all_thresholds(a, &skipped);
    res.files["thresholds.csv"] = thresholds_csv(th);
    res.files["thresholds_table.csv"] = thresholds_table_csv(th);

    const auto vol = a.volume();
    res.files["volume_daily.csv"] = volume_daily_csv(vol);
    res.files["volume_hourly.csv"] = volume_hourly_csv(vol);
    res.files["volume_summary.csv"] = volume_summary_csv(vol);

    std::vector<regression::RegressionFit> fits;
    for (const auto& s : kStrata) {
        if (!th.contains(s)) {
            continue;
        }
        if (cfg.timing && s.timing != *cfg.timing) {
            continue;
        }
        const std::string suffix = s.label() + ".csv";
        res.files["study_" + suffix] = study_csv(a.study(s));
        res.files["curves_" + suffix] = curves_csv(a.curves(s));
        try {
            fits.push_back(a.regress(s));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::TooFewPoints && e.kind() != ErrorKind::DegenerateRegressor) {
                throw;
            }
            skipped.push_back("regression " + s.label() + ": " + e.what());
        }
    }
    res.files["regression.csv"] = regression_csv(fits);

    if (th.contains({Timing::AfterClose, -1})) {
        const auto ledger = a.backtest();
        res.files["trades.csv"] = trades_csv(ledger);
        res.files["equity.csv"] = equity_csv(ledger);
    } else {
        skipped.push_back("backtest: no afterclose_day-1 thresholds");
    }
    res.files["events_report.csv"] = events_csv(a.events());

    json excluded = json::array();
    for (const auto& e : a.events()) {
        if (e.event.excluded) {
            excluded.push_back({{"ticker", e.event.ticker.str()},
                                {"announce_at_utc", format_rfc3339(e.event.announce_at)},
                                {"reason", e.event.exclusion_reason}});
        }
    }
    json outputs = json::object();
    for (const auto& [name, content] : res.files) {
        outputs[name] = sha256_hex(content);
    }
    json cfg_json;
    to_json(cfg_json, cfg);
    const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
    res.manifest = json{{"tool", "easent"},
                        {"version", "1.0.0"},
                        {"generated_at_utc", format_rfc3339(now)},
                        {"config", cfg_json},
                        {"inputs",
                         {{"prices.csv", sha256_hex(text.prices)},
                          {"index.csv", sha256_hex(text.index)},
                          {"tweets.csv", sha256_hex(text.tweets)},
                          {"events.csv", sha256_hex(text.events)}}},
                        {"n_events", a.events().size()},
                        {"n_excluded", excluded.size()},
                        {"excluded_events", excluded},
                        {"skipped", skipped},
                        {"outputs", outputs}};
    return res;
}

} // namespace easent::pipeline
