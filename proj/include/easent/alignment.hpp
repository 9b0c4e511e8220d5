#pragma once

#include "easent/time.hpp"
#include "easent/types.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace easent::align {

/// Ordered set of trading dates. A date is a trading day iff the benchmark
/// index has a bar on it. Copies share the underlying date list.
class TradingCalendar {
public:
    TradingCalendar() = default;
    /// Dates must be strictly increasing; throws Error(InvariantViolation).
    explicit TradingCalendar(std::vector<Date> dates);
    static TradingCalendar from_index(const std::vector<IndexBar>& index);

    const std::vector<Date>& dates() const { return *dates_; }
    std::size_t size() const { return dates_->size(); }
    bool empty() const { return dates_->empty(); }
    Date front() const { return dates_->front(); }
    Date back() const { return dates_->back(); }

    bool is_trading_day(Date d) const;
    std::optional<std::size_t> position(Date d) const;
    /// First trading date >= d / > d / < d, if any.
    std::optional<std::size_t> first_on_or_after(Date d) const;
    std::optional<std::size_t> first_after(Date d) const;
    std::optional<std::size_t> last_before(Date d) const;

    /// Trading date `k` sessions away from the trading date at `pos`.
    /// Throws Error(OutOfCalendarRange).
    Date shift(std::size_t pos, long k) const;
    Date at(std::size_t pos) const { return (*dates_)[pos]; }

    /// Close instant of a trading date (16:00 US/Eastern, in UTC).
    static Instant close_of(Date d);
    static Instant open_of(Date d);

private:
    std::shared_ptr<const std::vector<Date>> dates_ = std::make_shared<const std::vector<Date>>();
};

/// Trading date whose session ends the close-delimited interval containing
/// `instant`: the date D with instant in (close(prev D), close(D)]. An instant
/// exactly at 16:00:00 belongs to the session just closing. Coverage starts at
/// local midnight of the first calendar date and ends at the last close.
Date close_delimited_day(Instant instant, const TradingCalendar& cal);

struct EventAnchor {
    EarningsEvent event;
    TradingCalendar calendar;
    std::size_t day0_pos = 0;

    Date day0() const { return calendar.at(day0_pos); }
    /// Trading date `k` sessions from day 0. Throws Error(OutOfCalendarRange).
    Date day(long k) const { return calendar.shift(day0_pos, k); }
};

/// BeforeOpen: day 0 is the announcement's local date, which must be a
/// trading day. AfterClose: day 0 is the first trading date after the
/// announcement's local date.
EventAnchor anchor_event(const EarningsEvent& ev, const TradingCalendar& cal);

Date relative_day(const EventAnchor& anchor, long k);

} // namespace easent::align
