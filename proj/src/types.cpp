#include "easent/types.hpp"

#include "easent/error.hpp"

#include <algorithm>
#include <tuple>

namespace easent {

std::optional<Ticker> Ticker::parse(std::string_view symbol) {
    if (symbol.empty() || symbol.size() > 6) {
        return std::nullopt;
    }
    for (char ch : symbol) {
        if (!((ch >= 'A' && ch <= 'Z') || ch == '.')) {
            return std::nullopt;
        }
    }
    return Ticker(Unchecked{}, std::string(symbol));
}

Ticker::Ticker(std::string_view symbol) {
    auto t = parse(symbol);
    if (!t) {
        throw Error(ErrorKind::InvariantViolation, "malformed ticker '" + std::string(symbol) + "'");
    }
    symbol_ = std::move(t->symbol_);
}

std::string_view to_string(Timing t) {
    return t == Timing::BeforeOpen ? "BeforeOpen" : "AfterClose";
}

std::optional<Timing> parse_timing(std::string_view text) {
    if (text == "BeforeOpen") {
        return Timing::BeforeOpen;
    }
    if (text == "AfterClose") {
        return Timing::AfterClose;
    }
    return std::nullopt;
}

void canonicalize(Dataset& ds) {
    std::sort(ds.bars.begin(), ds.bars.end(), [](const DailyBar& a, const DailyBar& b) {
        return std::tie(a.ticker, a.date) < std::tie(b.ticker, b.date);
    });
    std::sort(ds.index.begin(), ds.index.end(),
              [](const IndexBar& a, const IndexBar& b) { return a.date < b.date; });
    std::sort(ds.tweets.begin(), ds.tweets.end(), [](const TweetBucket& a, const TweetBucket& b) {
        return std::tie(a.ticker, a.hour_start) < std::tie(b.ticker, b.hour_start);
    });
    std::stable_sort(ds.events.begin(), ds.events.end(),
                     [](const EarningsEvent& a, const EarningsEvent& b) {
                         return std::tie(a.ticker, a.announce_at) <
                                std::tie(b.ticker, b.announce_at);
                     });
}

} // namespace easent
