#include "fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace easent::testing {

using namespace std::chrono;

Date ymd(int y, unsigned m, unsigned d) { return Date{year{y} / month{m} / day{d}}; }

Instant utc(int y, unsigned m, unsigned d, int h, int mi, int s) {
    return Instant{ymd(y, m, d)} + hours{h} + minutes{mi} + seconds{s};
}

std::vector<Date> weekdays(Date start, std::size_t n, const std::vector<Date>& holidays) {
    std::vector<Date> out;
    for (Date d = start; out.size() < n; d += days{1}) {
        if (is_weekend(d) || std::find(holidays.begin(), holidays.end(), d) != holidays.end()) {
            continue;
        }
        out.push_back(d);
    }
    return out;
}

std::vector<IndexBar> index_of(const std::vector<Date>& dates, const std::vector<double>& closes) {
    std::vector<IndexBar> out;
    for (std::size_t i = 0; i < dates.size(); ++i) {
        out.push_back({dates[i], closes[i]});
    }
    return out;
}

std::vector<DailyBar> bars_of(const std::string& ticker, const std::vector<Date>& dates,
                              const std::vector<double>& closes, std::int64_t volume) {
    std::vector<DailyBar> out;
    for (std::size_t i = 0; i < dates.size(); ++i) {
        out.push_back({Ticker(ticker), dates[i], closes[i], volume});
    }
    return out;
}

std::vector<double> compound(double start, const std::vector<double>& returns) {
    std::vector<double> out{start};
    for (double r : returns) {
        out.push_back(out.back() * (1.0 + r));
    }
    return out;
}

EarningsEvent event(const std::string& ticker, Instant at, Timing timing, double rep, double est) {
    return {Ticker(ticker), at, timing, rep, est, false, {}};
}

TweetBucket bucket(const std::string& ticker, Date local_date, int local_hour, std::int64_t neg,
                   std::int64_t neut, std::int64_t pos) {
    return {Ticker(ticker), eastern::from_local(local_date, hours{local_hour}), neg, neut, pos};
}

void write_text(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path());
    }
    std::ofstream out(p, std::ios::binary);
    out << content;
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("easent_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

} // namespace easent::testing
