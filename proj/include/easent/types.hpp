#pragma once

#include "easent/time.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace easent {

/// Exchange ticker symbol: 1 to 6 characters from `[A-Z.]`.
class Ticker {
public:
    static std::optional<Ticker> parse(std::string_view symbol);
    /// Throws Error(InvariantViolation) on a malformed symbol.
    explicit Ticker(std::string_view symbol);

    const std::string& str() const noexcept { return symbol_; }

    friend auto operator<=>(const Ticker&, const Ticker&) = default;
    friend bool operator==(const Ticker&, const Ticker&) = default;

private:
    struct Unchecked {};
    Ticker(Unchecked, std::string symbol) : symbol_(std::move(symbol)) {}

    std::string symbol_;
};

enum class Timing { BeforeOpen, AfterClose };

std::string_view to_string(Timing t);
std::optional<Timing> parse_timing(std::string_view text);

struct DailyBar {
    Ticker ticker;
    Date date;
    double close;
    std::int64_t volume;
};

struct IndexBar {
    Date date;
    double close;
};

struct TweetBucket {
    Ticker ticker;
    Instant hour_start;
    std::int64_t n_neg = 0;
    std::int64_t n_neut = 0;
    std::int64_t n_pos = 0;

    std::int64_t total() const { return n_neg + n_neut + n_pos; }
};

struct EarningsEvent {
    Ticker ticker;
    Instant announce_at;
    Timing timing;
    double eps_reported;
    double eps_estimated;
    bool excluded = false;
    std::string exclusion_reason;
};

/// The four input series. Every collection is kept in canonical order:
/// bars by (ticker, date), index by date, tweets by (ticker, hour_start),
/// events by (ticker, announce_at).
struct Dataset {
    std::vector<DailyBar> bars;
    std::vector<IndexBar> index;
    std::vector<TweetBucket> tweets;
    std::vector<EarningsEvent> events;
};

/// Sorts every collection into canonical order.
void canonicalize(Dataset& ds);

} // namespace easent
