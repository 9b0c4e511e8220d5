#include "easent/alignment.hpp"

#include "easent/error.hpp"

#include <algorithm>

namespace easent::align {

TradingCalendar::TradingCalendar(std::vector<Date> dates) {
    for (std::size_t i = 1; i < dates.size(); ++i) {
        if (!(dates[i - 1] < dates[i])) {
            throw Error(ErrorKind::InvariantViolation,
                        "calendar dates not strictly increasing at " + format_date(dates[i]));
        }
    }
    dates_ = std::make_shared<const std::vector<Date>>(std::move(dates));
}

TradingCalendar TradingCalendar::from_index(const std::vector<IndexBar>& index) {
    std::vector<Date> dates;
    dates.reserve(index.size());
    for (const auto& bar : index) {
        dates.push_back(bar.date);
    }
    return TradingCalendar(std::move(dates));
}

bool TradingCalendar::is_trading_day(Date d) const { return position(d).has_value(); }

std::optional<std::size_t> TradingCalendar::position(Date d) const {
    const auto& v = *dates_;
    auto it = std::lower_bound(v.begin(), v.end(), d);
    if (it == v.end() || *it != d) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - v.begin());
}

std::optional<std::size_t> TradingCalendar::first_on_or_after(Date d) const {
    const auto& v = *dates_;
    auto it = std::lower_bound(v.begin(), v.end(), d);
    if (it == v.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - v.begin());
}

std::optional<std::size_t> TradingCalendar::first_after(Date d) const {
    const auto& v = *dates_;
    auto it = std::upper_bound(v.begin(), v.end(), d);
    if (it == v.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - v.begin());
}

std::optional<std::size_t> TradingCalendar::last_before(Date d) const {
    const auto& v = *dates_;
    auto it = std::lower_bound(v.begin(), v.end(), d);
    if (it == v.begin()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - v.begin()) - 1;
}

Date TradingCalendar::shift(std::size_t pos, long k) const {
    const long target = static_cast<long>(pos) + k;
    if (pos >= size() || target < 0 || target >= static_cast<long>(size())) {
        throw Error(ErrorKind::OutOfCalendarRange,
                    "offset " + std::to_string(k) + " from calendar position " +
                        std::to_string(pos) + " leaves the calendar");
    }
    return (*dates_)[static_cast<std::size_t>(target)];
}

Instant TradingCalendar::close_of(Date d) { return eastern::from_local(d, eastern::market_close); }

Instant TradingCalendar::open_of(Date d) { return eastern::from_local(d, eastern::market_open); }

Date close_delimited_day(Instant instant, const TradingCalendar& cal) {
    if (cal.empty()) {
        throw Error(ErrorKind::OutOfCalendarRange, "empty calendar");
    }
    const auto local = eastern::to_local(instant);
    if (local.date < cal.front()) {
        throw Error(ErrorKind::OutOfCalendarRange,
                    format_rfc3339(instant) + " precedes calendar start " + format_date(cal.front()));
    }
    if (local.time_of_day <= eastern::market_close && cal.is_trading_day(local.date)) {
        return local.date;
    }
    auto next = cal.first_after(local.date);
    if (!next) {
        throw Error(ErrorKind::OutOfCalendarRange,
                    format_rfc3339(instant) + " follows the last calendar close");
    }
    return cal.at(*next);
}

EventAnchor anchor_event(const EarningsEvent& ev, const TradingCalendar& cal) {
    if (cal.empty()) {
        throw Error(ErrorKind::OutOfCalendarRange, "empty calendar");
    }
    const auto local = eastern::to_local(ev.announce_at);
    const std::string where = ev.ticker.str() + " " + format_rfc3339(ev.announce_at);
    std::optional<std::size_t> day0;
    if (ev.timing == Timing::BeforeOpen) {
        if (local.time_of_day >= eastern::market_open) {
            throw Error(ErrorKind::NonTradingAnnouncement, where + " is not before the open");
        }
        if (local.date < cal.front() || local.date > cal.back()) {
            throw Error(ErrorKind::OutOfCalendarRange, where + " outside calendar");
        }
        day0 = cal.position(local.date);
        if (!day0) {
            throw Error(ErrorKind::NonTradingAnnouncement,
                        where + " is BeforeOpen on a non-trading day");
        }
    } else {
        if (local.time_of_day < eastern::market_close) {
            throw Error(ErrorKind::NonTradingAnnouncement, where + " is not after the close");
        }
        if (local.date < cal.front()) {
            throw Error(ErrorKind::OutOfCalendarRange, where + " outside calendar");
        }
        day0 = cal.first_after(local.date);
        if (!day0) {
            throw Error(ErrorKind::OutOfCalendarRange, where + " has no following trading date");
        }
    }
    return EventAnchor{ev, cal, *day0};
}

Date relative_day(const EventAnchor& anchor, long k) { return anchor.day(k); }

} // namespace easent::align
