#include "easent/error.hpp"
#include "easent/event_study.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace easent;
using namespace easent::testing;
using sentiment::EventPolarity;

namespace {

struct TwoEventFixture {
    std::vector<Date> dates = weekdays(ymd(2014, 1, 6), 150);
    Dataset ds;
    std::vector<double> index_px;
    std::vector<std::vector<double>> stock_px;
    std::vector<study::LabeledEvent> events;
    std::size_t day0[2] = {130, 135};

    TwoEventFixture() {
        std::mt19937_64 gen(17);
        std::normal_distribution<double> z;
        std::vector<double> rm;
        for (std::size_t i = 1; i < dates.size(); ++i) {
            rm.push_back(0.01 * z(gen));
        }
        index_px = compound(1000.0, rm);
        ds.index = index_of(dates, index_px);
        const char* names[] = {"AAA", "BBB"};
        const double beta[] = {0.8, 1.3};
        for (int s = 0; s < 2; ++s) {
            std::vector<double> r;
            for (std::size_t i = 1; i < dates.size(); ++i) {
                double ri = 0.0002 + beta[s] * rm[i - 1] + 0.01 * z(gen);
                if (i == day0[s]) {
                    ri += s == 0 ? 0.03 : 0.02;
                }
                r.push_back(ri);
            }
            stock_px.push_back(compound(50.0 + 10 * s, r));
            auto bars = bars_of(names[s], dates, stock_px.back());
            ds.bars.insert(ds.bars.end(), bars.begin(), bars.end());
        }
        const align::TradingCalendar cal(dates);
        for (int s = 0; s < 2; ++s) {
            const auto ev = event(names[s], eastern::from_local(dates[day0[s]], std::chrono::hours{7}),
                                  Timing::BeforeOpen);
            events.push_back({align::anchor_event(ev, cal), EventPolarity::Positive});
        }
    }

    // literal returns straight from the price vectors
    double ret(const std::vector<double>& px, std::size_t pos) const { return px[pos] / px[pos - 1] - 1.0; }
};

} // namespace

TEST(MarketModel, SpanFitUsesLastWindow) {
    std::vector<double> x{0.5, -0.3, 0.01, 0.02, -0.01, 0.03};
    std::vector<double> y;
    for (double v : x) {
        y.push_back(0.001 + 2.0 * v);
    }
    study::StudyConfig cfg;
    cfg.estimation_window = 4;
    y[0] = 99.0;  // outside the window, ignored
    const auto fit = study::fit_market_model(y, x, cfg);
    EXPECT_NEAR(fit.alpha, 0.001, 1e-15);
    EXPECT_NEAR(fit.beta, 2.0, 1e-13);
    EXPECT_EQ(fit.n_obs, 4u);
    cfg.estimation_window = 10;
    try {
        study::fit_market_model(y, x, cfg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InsufficientHistory);
    }
}

TEST(MarketModel, DegenerateIndex) {
    std::vector<double> x(5, 0.01);
    std::vector<double> y{0.1, 0.2, 0.3, 0.4, 0.5};
    study::StudyConfig cfg;
    cfg.estimation_window = 5;
    EXPECT_THROW(study::fit_market_model(y, x, cfg), Error);
}

TEST(EventStudy, TwoEventSpreadsheetOracle) {
    TwoEventFixture f;
    const returns::PriceBook book(f.ds);
    const study::StudyConfig cfg;
    const auto res = study::aggregate_study(f.events, book, cfg);
    ASSERT_EQ(res.classes.size(), 1u);
    ASSERT_TRUE(res.skipped.empty());
    const auto& c = res.classes[0];
    EXPECT_EQ(c.n, 2u);

    std::vector<std::vector<double>> ar;
    std::vector<double> sigma2;
    for (int s = 0; s < 2; ++s) {
        std::vector<double> x, y;
        for (std::size_t p = f.day0[s] - 121; p <= f.day0[s] - 2; ++p) {
            x.push_back(f.ret(f.index_px, p));
            y.push_back(f.ret(f.stock_px[s], p));
        }
        ASSERT_EQ(x.size(), 120u);
        const auto line = oracle::normal_equations(x, y);
        sigma2.push_back(line.ssr / 118.0);
        std::vector<double> a;
        for (std::size_t p = f.day0[s] - 1; p <= f.day0[s] + 10; ++p) {
            a.push_back(f.ret(f.stock_px[s], p) - (line.a + line.b * f.ret(f.index_px, p)));
        }
        ar.push_back(a);
    }
    const auto sheet = oracle::spreadsheet_car(ar, sigma2);
    ASSERT_EQ(c.tau.size(), 12u);
    for (std::size_t j = 0; j < 12; ++j) {
        EXPECT_EQ(c.tau[j], static_cast<long>(j) - 1);
        EXPECT_NEAR(c.mean_ar[j], sheet[j].mean_ar, 1e-12);
        EXPECT_NEAR(c.car[j], sheet[j].car, 1e-12);
        EXPECT_NEAR(c.variance[j], sheet[j].var, 1e-12);
        EXPECT_NEAR(c.theta[j], sheet[j].theta, 1e-9);
        EXPECT_EQ(c.significant[j], std::abs(sheet[j].theta) > 2.5758293035489);
    }
}

TEST(EventStudy, InputOrderIrrelevant) {
    TwoEventFixture f;
    const returns::PriceBook book(f.ds);
    const auto a = study::aggregate_study(f.events, book, {});
    std::reverse(f.events.begin(), f.events.end());
    const auto b = study::aggregate_study(f.events, book, {});
    EXPECT_EQ(a.classes[0].car, b.classes[0].car);
    EXPECT_EQ(a.classes[0].theta, b.classes[0].theta);
}

TEST(EventStudy, UnfittableEventSkippedThenEmptyClass) {
    TwoEventFixture f;
    // drop an estimation-window bar for the first stock
    f.ds.bars.erase(f.ds.bars.begin() + 50);
    const returns::PriceBook book(f.ds);
    const auto res = study::aggregate_study(f.events, book, {});
    ASSERT_EQ(res.skipped.size(), 1u);
    EXPECT_EQ(res.skipped[0].ticker, Ticker("AAA"));
    EXPECT_EQ(res.classes[0].n, 1u);

    f.events[1].polarity = EventPolarity::Negative;
    try {
        study::aggregate_study(f.events, book, {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EmptyClass);
    }
}

TEST(EventStudy, AggregateClassZeroVariance) {
    study::StudyConfig cfg;
    cfg.window_first = 0;
    cfg.window_last = 1;
    std::vector<study::EventAbnormal> flat{{{0.0, 0.0}, 0.0}};
    const auto c = study::aggregate_class(EventPolarity::Neutral, flat, cfg);
    EXPECT_EQ(c.theta[0], 0.0);
    EXPECT_FALSE(c.significant[0]);
    std::vector<study::EventAbnormal> jump{{{0.01, 0.0}, 0.0}};
    const auto j = study::aggregate_class(EventPolarity::Positive, jump, cfg);
    EXPECT_TRUE(std::isinf(j.theta[0]));
    EXPECT_TRUE(j.significant[0]);
    EXPECT_THROW(study::aggregate_class(EventPolarity::Positive, {}, cfg), Error);
}

TEST(EventStudy, VarianceGrowsLinearly) {
    study::StudyConfig cfg;
    std::vector<study::EventAbnormal> evs;
    for (int i = 0; i < 4; ++i) {
        evs.push_back({std::vector<double>(cfg.window_length(), 0.001 * i), 1e-4 * (i + 1)});
    }
    const auto c = study::aggregate_class(EventPolarity::Neutral, evs, cfg);
    const double per_day = (1e-4 + 2e-4 + 3e-4 + 4e-4) / 16.0;
    for (std::size_t j = 0; j < c.variance.size(); ++j) {
        EXPECT_NEAR(c.variance[j], per_day * static_cast<double>(j + 1), 1e-18);
    }
}

TEST(StudyConfig, Validation) {
    study::StudyConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_NEAR(cfg.critical_value(), 2.5758, 1e-4);
    cfg.window_first = 1;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = {};
    cfg.significance_level = 1.5;
    EXPECT_THROW(cfg.validate(), Error);
}
