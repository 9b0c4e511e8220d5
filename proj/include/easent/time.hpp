#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace easent {

/// Calendar date, exchange-local.
using Date = std::chrono::sys_days;
/// UTC instant at one-second resolution.
using Instant = std::chrono::sys_seconds;

std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date d);

/// Accepts `YYYY-MM-DDTHH:MM:SS` followed by `Z` or a `+HH:MM`/`-HH:MM`
/// offset; fractional seconds are not accepted. Result is UTC.
std::optional<Instant> parse_rfc3339(std::string_view text);
/// Always emits the `Z` form.
std::string format_rfc3339(Instant t);

bool is_weekend(Date d);

// US/Eastern wall clock. DST uses the rule in force since 2007: from the
// second Sunday of March 02:00 local to the first Sunday of November 02:00
// local. The same rule is applied to every year.
namespace eastern {

struct WallClock {
    Date date;
    std::chrono::seconds time_of_day;  // [0, 86400)
};

bool is_dst(Instant t);
std::chrono::seconds utc_offset(Instant t);
WallClock to_local(Instant t);
/// Wall-clock to UTC. Nonexistent spring-forward times resolve with the
/// standard offset; ambiguous fall-back times resolve to the first occurrence.
Instant from_local(Date date, std::chrono::seconds time_of_day);

inline constexpr std::chrono::seconds market_open{9 * 3600 + 30 * 60};
inline constexpr std::chrono::seconds market_close{16 * 3600};

} // namespace eastern

} // namespace easent
