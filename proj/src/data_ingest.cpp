#include "easent/data_ingest.hpp"

#include "easent/alignment.hpp"
#include "easent/csv.hpp"
#include "easent/sentiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace easent::ingest {

namespace {

using namespace std::chrono;

constexpr std::size_t kPrices = 0;
constexpr std::size_t kIndex = 1;
constexpr std::size_t kTweets = 2;
constexpr std::size_t kEvents = 3;
const char* const kFileNames[] = {"prices.csv", "index.csv", "tweets.csv", "events.csv"};

std::string join_header(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        // tolerate surrounding whitespace in header names
        const auto& f = fields[i];
        const auto first = f.find_first_not_of(" \t");
        const auto last = f.find_last_not_of(" \t");
        if (first != std::string::npos) {
            out += f.substr(first, last - first + 1);
        }
    }
    return out;
}

template <typename T>
struct Parsed {
    T value;
    long row;
};

class Collector {
public:
    explicit Collector(LoadReport& report) : report_(report) {}

    void reject(std::size_t file, long row, long line, ErrorKind kind, std::string column,
                std::string message) {
        report_.diagnostics.push_back(
            Diagnostic{kFileNames[file], row, line, kind, std::move(column), std::move(message)});
        order_.push_back(file);
    }

    void sort() {
        std::vector<std::size_t> idx(report_.diagnostics.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            idx[i] = i;
        }
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return std::tie(order_[a], report_.diagnostics[a].row) <
                   std::tie(order_[b], report_.diagnostics[b].row);
        });
        std::vector<Diagnostic> sorted;
        sorted.reserve(idx.size());
        for (auto i : idx) {
            sorted.push_back(std::move(report_.diagnostics[i]));
        }
        report_.diagnostics = std::move(sorted);
    }

private:
    LoadReport& report_;
    std::vector<std::size_t> order_;
};

csv::Table parse_table(const std::string& content, std::size_t file, const char* header) {
    csv::Table table = csv::parse(content);
    const std::string got = join_header(table.header);
    if (got != header) {
        throw Error(ErrorKind::SchemaMismatch,
                    std::string(kFileNames[file]) + ": header '" + got + "' expected '" + header +
                        "'",
                    0);
    }
    return table;
}

/// Validates field count and returns false (after recording) on mismatch.
bool check_width(Collector& c, std::size_t file, const csv::Table& t, std::size_t i,
                 std::size_t width) {
    if (t.rows[i].size() != width) {
        c.reject(file, static_cast<long>(i) + 1, t.line_numbers[i], ErrorKind::SchemaMismatch, "*",
                 "expected " + std::to_string(width) + " fields, found " +
                     std::to_string(t.rows[i].size()));
        return false;
    }
    return true;
}

std::vector<Parsed<IndexBar>> parse_index(const csv::Table& t, Collector& c) {
    std::vector<Parsed<IndexBar>> out;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const long row = static_cast<long>(i) + 1;
        const long line = t.line_numbers[i];
        if (!check_width(c, kIndex, t, i, 2)) {
            continue;
        }
        const auto& f = t.rows[i];
        auto date = parse_date(f[0]);
        if (!date) {
            c.reject(kIndex, row, line, ErrorKind::SchemaMismatch, "date", "bad date '" + f[0] + "'");
            continue;
        }
        auto close = csv::to_double(f[1]);
        if (!close) {
            c.reject(kIndex, row, line, ErrorKind::SchemaMismatch, "close", "bad number '" + f[1] + "'");
            continue;
        }
        if (!(*close > 0.0)) {
            c.reject(kIndex, row, line, ErrorKind::InvariantViolation, "close",
                     "index close must be > 0");
            continue;
        }
        out.push_back({IndexBar{*date, *close}, row});
    }
    return out;
}

std::vector<Parsed<DailyBar>> parse_prices(const csv::Table& t, Collector& c) {
    std::vector<Parsed<DailyBar>> out;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const long row = static_cast<long>(i) + 1;
        const long line = t.line_numbers[i];
        if (!check_width(c, kPrices, t, i, 4)) {
            continue;
        }
        const auto& f = t.rows[i];
        auto date = parse_date(f[0]);
        if (!date) {
            c.reject(kPrices, row, line, ErrorKind::SchemaMismatch, "date", "bad date '" + f[0] + "'");
            continue;
        }
        auto ticker = Ticker::parse(f[1]);
        if (!ticker) {
            c.reject(kPrices, row, line, ErrorKind::InvariantViolation, "ticker",
                     "malformed ticker '" + f[1] + "'");
            continue;
        }
        auto close = csv::to_double(f[2]);
        if (!close) {
            c.reject(kPrices, row, line, ErrorKind::SchemaMismatch, "close", "bad number '" + f[2] + "'");
            continue;
        }
        auto volume = csv::to_int(f[3]);
        if (!volume) {
            c.reject(kPrices, row, line, ErrorKind::SchemaMismatch, "volume",
                     "bad integer '" + f[3] + "'");
            continue;
        }
        if (!(*close > 0.0)) {
            c.reject(kPrices, row, line, ErrorKind::InvariantViolation, "close", "close must be > 0");
            continue;
        }
        if (*volume < 0) {
            c.reject(kPrices, row, line, ErrorKind::InvariantViolation, "volume",
                     "volume must be >= 0");
            continue;
        }
        out.push_back({DailyBar{*ticker, *date, *close, *volume}, row});
    }
    return out;
}

std::vector<Parsed<TweetBucket>> parse_tweets(const csv::Table& t, Collector& c) {
    std::vector<Parsed<TweetBucket>> out;
    const char* names[] = {"n_neg", "n_neut", "n_pos"};
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const long row = static_cast<long>(i) + 1;
        const long line = t.line_numbers[i];
        if (!check_width(c, kTweets, t, i, 5)) {
            continue;
        }
        const auto& f = t.rows[i];
        auto hour = parse_rfc3339(f[0]);
        if (!hour) {
            c.reject(kTweets, row, line, ErrorKind::SchemaMismatch, "hour_start_utc",
                     "bad RFC 3339 instant '" + f[0] + "'");
            continue;
        }
        auto ticker = Ticker::parse(f[1]);
        if (!ticker) {
            c.reject(kTweets, row, line, ErrorKind::InvariantViolation, "ticker",
                     "malformed ticker '" + f[1] + "'");
            continue;
        }
        std::int64_t counts[3] = {0, 0, 0};
        bool ok = true;
        for (std::size_t k = 0; k < 3 && ok; ++k) {
            auto v = csv::to_int(f[2 + k]);
            if (!v) {
                c.reject(kTweets, row, line, ErrorKind::SchemaMismatch, names[k],
                         "bad integer '" + f[2 + k] + "'");
                ok = false;
            } else {
                counts[k] = *v;
            }
        }
        if (!ok) {
            continue;
        }
        if (floor<hours>(*hour) != *hour) {
            c.reject(kTweets, row, line, ErrorKind::InvariantViolation, "hour_start_utc",
                     "hour_start must have zero minutes and seconds");
            continue;
        }
        if (counts[0] < 0 || counts[1] < 0 || counts[2] < 0) {
            c.reject(kTweets, row, line, ErrorKind::InvariantViolation, "n_*",
                     "tweet counts must be >= 0");
            continue;
        }
        out.push_back({TweetBucket{*ticker, *hour, counts[0], counts[1], counts[2]}, row});
    }
    return out;
}

std::vector<Parsed<EarningsEvent>> parse_events(const csv::Table& t, Collector& c) {
    std::vector<Parsed<EarningsEvent>> out;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const long row = static_cast<long>(i) + 1;
        const long line = t.line_numbers[i];
        if (!check_width(c, kEvents, t, i, 5)) {
            continue;
        }
        const auto& f = t.rows[i];
        auto ticker = Ticker::parse(f[0]);
        if (!ticker) {
            c.reject(kEvents, row, line, ErrorKind::InvariantViolation, "ticker",
                     "malformed ticker '" + f[0] + "'");
            continue;
        }
        auto at = parse_rfc3339(f[1]);
        if (!at) {
            c.reject(kEvents, row, line, ErrorKind::SchemaMismatch, "announce_at_utc",
                     "bad RFC 3339 instant '" + f[1] + "'");
            continue;
        }
        auto timing = parse_timing(f[2]);
        if (!timing) {
            c.reject(kEvents, row, line, ErrorKind::SchemaMismatch, "timing",
                     "timing must be BeforeOpen or AfterClose, got '" + f[2] + "'");
            continue;
        }
        auto rep = csv::to_double(f[3]);
        if (!rep) {
            c.reject(kEvents, row, line, ErrorKind::SchemaMismatch, "eps_reported",
                     "bad number '" + f[3] + "'");
            continue;
        }
        auto est = csv::to_double(f[4]);
        if (!est) {
            c.reject(kEvents, row, line, ErrorKind::SchemaMismatch, "eps_estimated",
                     "bad number '" + f[4] + "'");
            continue;
        }
        const auto local = eastern::to_local(*at);
        if (local.time_of_day >= eastern::market_open && local.time_of_day < eastern::market_close) {
            c.reject(kEvents, row, line, ErrorKind::InvariantViolation, "announce_at_utc",
                     "announcement inside trading hours");
            continue;
        }
        const bool before_open = local.time_of_day < eastern::market_open;
        if ((*timing == Timing::BeforeOpen) != before_open) {
            c.reject(kEvents, row, line, ErrorKind::InvariantViolation, "timing",
                     "timing " + std::string(to_string(*timing)) +
                         " inconsistent with announcement time");
            continue;
        }
        EarningsEvent ev{*ticker, *at, *timing, *rep, *est, false, {}};
        if (*est == 0.0) {
            ev.excluded = true;
            ev.exclusion_reason = kZeroEstimateReason;
        }
        out.push_back({std::move(ev), row});
    }
    return out;
}

} // namespace

std::string Diagnostic::describe() const {
    std::ostringstream os;
    os << file << " row " << row << " (line " << line << "): " << to_string(kind);
    if (!column.empty()) {
        os << " [" << column << "]";
    }
    os << " " << message;
    return os.str();
}

DatasetPaths DatasetPaths::in_directory(const std::filesystem::path& dir) {
    return {dir / "prices.csv", dir / "index.csv", dir / "tweets.csv", dir / "events.csv"};
}

LoadReport parse_dataset(const DatasetText& text) {
    LoadReport report;
    Collector c(report);

    const csv::Table prices_t = parse_table(text.prices, kPrices, kPricesHeader);
    const csv::Table index_t = parse_table(text.index, kIndex, kIndexHeader);
    const csv::Table tweets_t = parse_table(text.tweets, kTweets, kTweetsHeader);
    const csv::Table events_t = parse_table(text.events, kEvents, kEventsHeader);

    auto index_rows = parse_index(index_t, c);
    auto price_rows = parse_prices(prices_t, c);
    auto tweet_rows = parse_tweets(tweets_t, c);
    auto event_rows = parse_events(events_t, c);

    Dataset& ds = report.dataset;

    // index: unique dates
    std::map<Date, long> index_seen;
    for (auto& p : index_rows) {
        auto [it, inserted] = index_seen.emplace(p.value.date, p.row);
        if (!inserted) {
            c.reject(kIndex, p.row, index_t.line_numbers[p.row - 1], ErrorKind::InvariantViolation,
                     "date", "duplicate index date " + format_date(p.value.date));
            continue;
        }
        ds.index.push_back(p.value);
    }

    // prices: unique (ticker, date), dated on the trading calendar
    std::set<std::pair<Ticker, Date>> bar_seen;
    std::set<Ticker> bar_tickers;
    for (auto& p : price_rows) {
        const long line = prices_t.line_numbers[p.row - 1];
        if (!bar_seen.emplace(p.value.ticker, p.value.date).second) {
            c.reject(kPrices, p.row, line, ErrorKind::InvariantViolation, "date",
                     "duplicate bar " + p.value.ticker.str() + " " + format_date(p.value.date));
            continue;
        }
        if (!index_seen.contains(p.value.date)) {
            c.reject(kPrices, p.row, line, ErrorKind::InvariantViolation, "date",
                     "no index bar on " + format_date(p.value.date));
            continue;
        }
        bar_tickers.insert(p.value.ticker);
        ds.bars.push_back(std::move(p.value));
    }

    std::set<std::pair<Ticker, Instant>> tweet_seen;
    for (auto& p : tweet_rows) {
        if (!tweet_seen.emplace(p.value.ticker, p.value.hour_start).second) {
            c.reject(kTweets, p.row, tweets_t.line_numbers[p.row - 1],
                     ErrorKind::InvariantViolation, "hour_start_utc",
                     "duplicate bucket " + p.value.ticker.str() + " " +
                         format_rfc3339(p.value.hour_start));
            continue;
        }
        ds.tweets.push_back(std::move(p.value));
    }

    std::vector<Date> cal_dates;
    for (const auto& [d, row] : index_seen) {
        cal_dates.push_back(d);
    }
    const align::TradingCalendar cal(std::move(cal_dates));
    std::set<std::pair<Ticker, Instant>> event_seen;
    for (auto& p : event_rows) {
        const long line = events_t.line_numbers[p.row - 1];
        const auto& ev = p.value;
        if (!bar_tickers.contains(ev.ticker)) {
            c.reject(kEvents, p.row, line, ErrorKind::InvariantViolation, "ticker",
                     "no price bars for " + ev.ticker.str());
            continue;
        }
        if (ev.timing == Timing::BeforeOpen && !cal.empty()) {
            const Date local = eastern::to_local(ev.announce_at).date;
            if (local >= cal.front() && local <= cal.back() && !cal.is_trading_day(local)) {
                c.reject(kEvents, p.row, line, ErrorKind::InvariantViolation, "announce_at_utc",
                         "BeforeOpen announcement on non-trading day " + format_date(local));
                continue;
            }
        }
        if (!event_seen.emplace(ev.ticker, ev.announce_at).second) {
            c.reject(kEvents, p.row, line, ErrorKind::InvariantViolation, "announce_at_utc",
                     "duplicate event " + ev.ticker.str() + " " + format_rfc3339(ev.announce_at));
            continue;
        }
        ds.events.push_back(std::move(p.value));
    }

    c.sort();
    canonicalize(ds);

    const std::size_t totals[] = {prices_t.rows.size(), index_t.rows.size(), tweets_t.rows.size(),
                                  events_t.rows.size()};
    const std::size_t accepted[] = {ds.bars.size(), ds.index.size(), ds.tweets.size(),
                                    ds.events.size()};
    for (std::size_t f = 0; f < 4; ++f) {
        report.tallies.push_back(
            FileTally{kFileNames[f], totals[f], accepted[f], totals[f] - accepted[f]});
    }
    return report;
}

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::MissingFile, "cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

LoadReport load_dataset_report(const DatasetPaths& paths) {
    DatasetText text{slurp(paths.prices), slurp(paths.index), slurp(paths.tweets),
                     slurp(paths.events)};
    return parse_dataset(text);
}

namespace {

Dataset strict(LoadReport report) {
    if (!report.diagnostics.empty()) {
        const auto& d = report.diagnostics.front();
        throw Error(d.kind, d.describe(), d.row);
    }
    return std::move(report.dataset);
}

} // namespace

Dataset load_dataset(const DatasetPaths& paths) { return strict(load_dataset_report(paths)); }

Dataset load_dataset(const DatasetText& text) { return strict(parse_dataset(text)); }

DatasetText format_dataset(const Dataset& input) {
    Dataset ds = input;
    canonicalize(ds);
    DatasetText out;
    {
        std::ostringstream os;
        os << kPricesHeader << '\n';
        for (const auto& b : ds.bars) {
            csv::write_row(os, {format_date(b.date), b.ticker.str(), csv::format_double(b.close),
                                std::to_string(b.volume)});
        }
        out.prices = os.str();
    }
    {
        std::ostringstream os;
        os << kIndexHeader << '\n';
        for (const auto& b : ds.index) {
            csv::write_row(os, {format_date(b.date), csv::format_double(b.close)});
        }
        out.index = os.str();
    }
    {
        std::ostringstream os;
        os << kTweetsHeader << '\n';
        for (const auto& b : ds.tweets) {
            csv::write_row(os, {format_rfc3339(b.hour_start), b.ticker.str(), std::to_string(b.n_neg),
                                std::to_string(b.n_neut), std::to_string(b.n_pos)});
        }
        out.tweets = os.str();
    }
    {
        std::ostringstream os;
        os << kEventsHeader << '\n';
        for (const auto& e : ds.events) {
            csv::write_row(os, {e.ticker.str(), format_rfc3339(e.announce_at),
                                std::string(to_string(e.timing)), csv::format_double(e.eps_reported),
                                csv::format_double(e.eps_estimated)});
        }
        out.events = os.str();
    }
    return out;
}

void write_dataset(const Dataset& ds, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const DatasetText text = format_dataset(ds);
    const auto paths = DatasetPaths::in_directory(dir);
    const std::pair<const std::filesystem::path*, const std::string*> files[] = {
        {&paths.prices, &text.prices},
        {&paths.index, &text.index},
        {&paths.tweets, &text.tweets},
        {&paths.events, &text.events}};
    for (const auto& [path, content] : files) {
        std::ofstream out(*path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorKind::Io, "cannot write " + path->string());
        }
        out << *content;
        if (!out) {
            throw Error(ErrorKind::Io, "write failed for " + path->string());
        }
    }
}

std::vector<std::pair<EarningsEvent, CoverageReport>>
validate_event_coverage(const Dataset& ds, const CoverageOptions& opts) {
    const auto cal = align::TradingCalendar::from_index(ds.index);
    const sentiment::DailyCountIndex counts(sentiment::daily_counts(ds.tweets, cal));

    std::set<std::pair<Ticker, Date>> have_bar;
    std::map<Ticker, std::vector<Date>> bar_dates;
    for (const auto& b : ds.bars) {
        have_bar.emplace(b.ticker, b.date);
        bar_dates[b.ticker].push_back(b.date);
    }
    auto covers = [&](const Ticker& t, const align::EventAnchor& a, long first, long last) {
        for (long k = first; k <= last; ++k) {
            const long pos = static_cast<long>(a.day0_pos) + k;
            if (pos < 0 || pos >= static_cast<long>(cal.size())) {
                return false;
            }
            if (!have_bar.contains({t, cal.at(static_cast<std::size_t>(pos))})) {
                return false;
            }
        }
        return true;
    };

    std::vector<std::pair<EarningsEvent, CoverageReport>> out;
    out.reserve(ds.events.size());
    for (const auto& ev : ds.events) {
        CoverageReport rep;
        EarningsEvent marked = ev;
        auto mark = [&](const char* reason) {
            if (!marked.excluded) {
                marked.excluded = true;
                marked.exclusion_reason = reason;
            }
        };
        if (ev.eps_estimated == 0.0) {
            mark(kZeroEstimateReason);
        }
        std::optional<align::EventAnchor> anchor;
        try {
            anchor = align::anchor_event(ev, cal);
        } catch (const Error&) {
            mark(kOutsideCalendarReason);
        }
        if (anchor) {
            const Date day0 = anchor->day0();
            rep.day0 = day0;
            rep.day0_tweets = counts.get(ev.ticker, day0).total();
            if (auto it = bar_dates.find(ev.ticker); it != bar_dates.end()) {
                rep.prior_bars = static_cast<std::size_t>(
                    std::lower_bound(it->second.begin(), it->second.end(), day0) -
                    it->second.begin());
            }
            // estimation returns on day(-1-L)..day(-2) need bars day(-2-L)..day(-2)
            const long est_last = opts.window_first - 1;
            rep.estimation_ok = covers(ev.ticker, *anchor, est_last - opts.estimation_window, est_last);
            rep.event_window_ok = covers(ev.ticker, *anchor, opts.window_first - 1, opts.window_last);
            if (rep.day0_tweets == 0) {
                mark(kNoDayZeroTweetsReason);
            } else if (!rep.estimation_ok) {
                mark(kShortHistoryReason);
            } else if (!rep.event_window_ok) {
                mark(kIncompleteWindowReason);
            }
        }
        rep.excluded = marked.excluded;
        rep.reason = marked.exclusion_reason;
        out.emplace_back(std::move(marked), std::move(rep));
    }
    return out;
}

Dataset apply_coverage(const Dataset& ds, const CoverageOptions& opts) {
    Dataset out = ds;
    auto cov = validate_event_coverage(ds, opts);
    for (std::size_t i = 0; i < cov.size(); ++i) {
        out.events[i] = std::move(cov[i].first);
    }
    return out;
}

} // namespace easent::ingest
