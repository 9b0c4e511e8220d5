#include "easent/time.hpp"

#include <charconv>
#include <cstdio>

namespace easent {

using namespace std::chrono;

namespace {

bool parse_fixed(std::string_view text, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > text.size()) {
        return false;
    }
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (text[i] < '0' || text[i] > '9') {
            return false;
        }
    }
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, out);
    return ec == std::errc{} && ptr == text.data() + pos + len;
}

std::optional<Date> parse_date_prefix(std::string_view text) {
    int y = 0;
    int m = 0;
    int d = 0;
    if (text.size() < 10 || text[4] != '-' || text[7] != '-' || !parse_fixed(text, 0, 4, y) ||
        !parse_fixed(text, 5, 2, m) || !parse_fixed(text, 8, 2, d)) {
        return std::nullopt;
    }
    year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) {
        return std::nullopt;
    }
    return sys_days{ymd};
}

} // namespace

std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10) {
        return std::nullopt;
    }
    return parse_date_prefix(text);
}

std::string format_date(Date d) {
    year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::optional<Instant> parse_rfc3339(std::string_view text) {
    auto date = parse_date_prefix(text);
    if (!date || text.size() < 20 || (text[10] != 'T' && text[10] != 't') || text[13] != ':' ||
        text[16] != ':') {
        return std::nullopt;
    }
    int hh = 0;
    int mm = 0;
    int ss = 0;
    if (!parse_fixed(text, 11, 2, hh) || !parse_fixed(text, 14, 2, mm) ||
        !parse_fixed(text, 17, 2, ss) || hh > 23 || mm > 59 || ss > 59) {
        return std::nullopt;
    }
    Instant t = *date + hours{hh} + minutes{mm} + seconds{ss};
    std::string_view zone = text.substr(19);
    if (zone == "Z" || zone == "z") {
        return t;
    }
    int oh = 0;
    int om = 0;
    if (zone.size() != 6 || (zone[0] != '+' && zone[0] != '-') || zone[3] != ':' ||
        !parse_fixed(zone, 1, 2, oh) || !parse_fixed(zone, 4, 2, om) || oh > 23 || om > 59) {
        return std::nullopt;
    }
    const seconds offset = hours{oh} + minutes{om};
    return zone[0] == '+' ? t - offset : t + offset;
}

std::string format_rfc3339(Instant t) {
    const Date d = floor<days>(t);
    const auto tod = t - d;
    const hh_mm_ss<seconds> hms{tod};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", format_date(d).c_str(),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
    return buf;
}

bool is_weekend(Date d) {
    const weekday w{d};
    return w == Saturday || w == Sunday;
}

namespace eastern {

namespace {

constexpr seconds kStandardOffset = hours{-5};
constexpr seconds kDaylightOffset = hours{-4};

} // namespace

bool is_dst(Instant t) {
    const year y = year_month_day{floor<days>(t)}.year();
    // 02:00 EST == 07:00 UTC; 02:00 EDT == 06:00 UTC
    const Instant start = sys_days{y / March / Sunday[2]} + hours{7};
    const Instant end = sys_days{y / November / Sunday[1]} + hours{6};
    return t >= start && t < end;
}

seconds utc_offset(Instant t) { return is_dst(t) ? kDaylightOffset : kStandardOffset; }

WallClock to_local(Instant t) {
    const auto local = t + utc_offset(t);
    const Date d = floor<days>(local);
    return {d, local - d};
}

Instant from_local(Date date, seconds time_of_day) {
    const Instant naive = date + time_of_day;
    const Instant as_daylight = naive - kDaylightOffset;
    if (is_dst(as_daylight)) {
        return as_daylight;
    }
    return naive - kStandardOffset;
}

} // namespace eastern

} // namespace easent
