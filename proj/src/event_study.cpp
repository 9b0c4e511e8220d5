#include "easent/event_study.hpp"

#include "easent/error.hpp"
#include "easent/ols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace easent::study {

void StudyConfig::validate() const {
    if (window_first > 0 || window_last < 0 || window_first > window_last) {
        throw Error(ErrorKind::InvalidConfig, "event window must contain day 0");
    }
    if (estimation_window < 3) {
        throw Error(ErrorKind::InvalidConfig, "estimation window must be at least 3 days");
    }
    if (!(significance_level > 0.0 && significance_level < 1.0)) {
        throw Error(ErrorKind::InvalidConfig, "significance level must be in (0, 1)");
    }
}

double StudyConfig::critical_value() const {
    return stats::normal_upper_quantile(significance_level / 2.0);
}

MarketModelFit fit_market_model(std::span<const double> stock_returns,
                                std::span<const double> index_returns, const StudyConfig& cfg) {
    const auto l = static_cast<std::size_t>(cfg.estimation_window);
    if (stock_returns.size() != index_returns.size()) {
        throw Error(ErrorKind::InsufficientHistory, "stock and index return lengths differ");
    }
    if (stock_returns.size() < l) {
        throw Error(ErrorKind::InsufficientHistory,
                    "need " + std::to_string(l) + " paired returns, have " +
                        std::to_string(stock_returns.size()));
    }
    const auto y = stock_returns.last(l);
    const auto x = index_returns.last(l);
    const stats::LineFit line = stats::fit_line(x, y);
    MarketModelFit fit;
    fit.alpha = line.intercept;
    fit.beta = line.slope;
    fit.n_obs = l;
    fit.sigma2_eps = line.ssr / static_cast<double>(l - 2);
    return fit;
}

MarketModelFit fit_market_model(const returns::PriceBook& book, const align::EventAnchor& anchor,
                                const StudyConfig& cfg) {
    const long last = cfg.window_first - 1;
    const long first = last - cfg.estimation_window + 1;
    std::vector<double> stock;
    std::vector<double> index;
    stock.reserve(static_cast<std::size_t>(cfg.estimation_window));
    index.reserve(static_cast<std::size_t>(cfg.estimation_window));
    try {
        for (long k = first; k <= last; ++k) {
            const Date d = anchor.day(k);
            stock.push_back(book.stock_return(anchor.event.ticker, d));
            index.push_back(book.index_return(d));
        }
    } catch (const Error& e) {
        throw Error(ErrorKind::InsufficientHistory, e.what());
    }
    return fit_market_model(stock, index, cfg);
}

std::vector<double> abnormal_returns(const MarketModelFit& fit, std::span<const double> stock_returns,
                                     std::span<const double> index_returns) {
    if (stock_returns.size() != index_returns.size()) {
        throw Error(ErrorKind::MissingBar, "stock and index window lengths differ");
    }
    std::vector<double> ar(stock_returns.size());
    for (std::size_t i = 0; i < ar.size(); ++i) {
        ar[i] = stock_returns[i] - (fit.alpha + fit.beta * index_returns[i]);
    }
    return ar;
}

std::vector<double> abnormal_returns(const MarketModelFit& fit, const returns::PriceBook& book,
                                     const align::EventAnchor& anchor, const StudyConfig& cfg) {
    std::vector<double> stock;
    std::vector<double> index;
    for (long k = cfg.window_first; k <= cfg.window_last; ++k) {
        Date d;
        try {
            d = anchor.day(k);
        } catch (const Error& e) {
            throw Error(ErrorKind::MissingBar, e.what());
        }
        stock.push_back(book.stock_return(anchor.event.ticker, d));
        index.push_back(book.index_return(d));
    }
    return abnormal_returns(fit, stock, index);
}

const ClassStudy* EventStudyResult::find(sentiment::EventPolarity p) const {
    for (const auto& c : classes) {
        if (c.polarity == p) {
            return &c;
        }
    }
    return nullptr;
}

ClassStudy aggregate_class(sentiment::EventPolarity polarity, std::span<const EventAbnormal> events,
                           const StudyConfig& cfg) {
    if (events.empty()) {
        throw Error(ErrorKind::EmptyClass,
                    "no usable events in class " + std::string(sentiment::to_string(polarity)));
    }
    const std::size_t len = cfg.window_length();
    const double n = static_cast<double>(events.size());
    double sigma2_sum = 0.0;
    for (const auto& e : events) {
        if (e.ar.size() != len) {
            throw Error(ErrorKind::MissingBar, "abnormal return series does not span the window");
        }
        sigma2_sum += e.sigma2_eps;
    }
    const double crit = cfg.critical_value();

    ClassStudy out;
    out.polarity = polarity;
    out.n = events.size();
    double car = 0.0;
    for (std::size_t j = 0; j < len; ++j) {
        double sum = 0.0;
        for (const auto& e : events) {
            sum += e.ar[j];
        }
        const double mean = sum / n;
        car += mean;
        const double days = static_cast<double>(j + 1);  // tau - window_first + 1
        const double var = days * sigma2_sum / (n * n);
        double theta = 0.0;
        if (var > 0.0) {
            theta = car / std::sqrt(var);
        } else if (car != 0.0) {
            theta = std::copysign(std::numeric_limits<double>::infinity(), car);
        }
        out.tau.push_back(cfg.window_first + static_cast<long>(j));
        out.mean_ar.push_back(mean);
        out.car.push_back(car);
        out.variance.push_back(var);
        out.theta.push_back(theta);
        out.significant.push_back(std::abs(theta) > crit);
    }
    return out;
}

EventStudyResult aggregate_study(std::span<const LabeledEvent> events, const returns::PriceBook& book,
                                 const StudyConfig& cfg) {
    cfg.validate();
    if (events.empty()) {
        throw Error(ErrorKind::EmptyClass, "no events to study");
    }
    std::vector<const LabeledEvent*> ordered;
    ordered.reserve(events.size());
    for (const auto& e : events) {
        ordered.push_back(&e);
    }
    // fixed summation order makes the result independent of input order
    std::sort(ordered.begin(), ordered.end(), [](const LabeledEvent* a, const LabeledEvent* b) {
        return std::tie(a->anchor.event.ticker, a->anchor.event.announce_at, a->polarity) <
               std::tie(b->anchor.event.ticker, b->anchor.event.announce_at, b->polarity);
    });

    EventStudyResult result;
    std::vector<EventAbnormal> by_class[3];
    bool present[3] = {false, false, false};
    for (const LabeledEvent* e : ordered) {
        const auto cls = static_cast<std::size_t>(e->polarity);
        present[cls] = true;
        try {
            const MarketModelFit fit = fit_market_model(book, e->anchor, cfg);
            by_class[cls].push_back({abnormal_returns(fit, book, e->anchor, cfg), fit.sigma2_eps});
        } catch (const Error& err) {
            result.skipped.push_back({e->anchor.event.ticker, e->anchor.event.announce_at, err.what()});
        }
    }
    for (std::size_t c = 0; c < 3; ++c) {
        if (present[c]) {
            result.classes.push_back(
                aggregate_class(static_cast<sentiment::EventPolarity>(c), by_class[c], cfg));
        }
    }
    return result;
}

} // namespace easent::study
