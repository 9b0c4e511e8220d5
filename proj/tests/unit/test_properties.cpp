// Seeded property tests over randomly generated inputs.

#include "easent/alignment.hpp"
#include "easent/event_study.hpp"
#include "easent/ols.hpp"
#include "easent/regression.hpp"
#include "easent/returns.hpp"
#include "easent/sentiment.hpp"
#include "easent/trading.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

using namespace easent;
using namespace easent::testing;
using sentiment::EventPolarity;
using sentiment::SentimentScore;

namespace {

std::vector<double> random_returns(std::mt19937_64& gen, std::size_t n, double vol) {
    std::normal_distribution<double> z(0.0, vol);
    std::vector<double> r(n);
    for (auto& v : r) {
        v = std::max(z(gen), -0.5);
    }
    return r;
}

} // namespace

TEST(SentimentProperty, AntisymmetricAndBounded) {
    std::mt19937_64 gen(11);
    std::uniform_int_distribution<std::int64_t> count(0, 500);
    for (int i = 0; i < 2000; ++i) {
        const auto a = count(gen), m = count(gen), b = count(gen);
        const double s = sentiment::sentiment_score(a, m, b).value();
        EXPECT_EQ(s, -sentiment::sentiment_score(b, m, a).value());
        EXPECT_LT(std::abs(s), 1.0);
        const double wider = sentiment::sentiment_score(a, m + 1 + count(gen), b).value();
        if (s != 0.0) {
            EXPECT_LT(std::abs(wider), std::abs(s));
        } else {
            EXPECT_EQ(wider, 0.0);
        }
    }
}

TEST(SentimentProperty, CategorizationIsMonotone) {
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<SentimentScore> scores;
        for (int i = 0; i < 30; ++i) {
            scores.emplace_back(std::round(u(gen) * 20.0) / 20.0);  // coarse grid forces ties
        }
        const auto th = sentiment::tercile_thresholds(scores);
        EXPECT_LE(th.t_low, th.t_high);
        std::sort(scores.begin(), scores.end());
        for (std::size_t i = 1; i < scores.size(); ++i) {
            EXPECT_LE(sentiment::categorize_event(scores[i - 1], th), sentiment::categorize_event(scores[i], th));
        }
    }
}

TEST(SentimentProperty, DailyCountsConserveTotals) {
    std::mt19937_64 gen(13);
    const auto dates = weekdays(ymd(2014, 3, 3), 40);
    const align::TradingCalendar cal(dates);
    std::uniform_int_distribution<int> day(1, 50), hour(0, 23), n(0, 9), who(0, 2);
    const char* names[] = {"AAA", "BBB", "CCC"};
    std::map<std::pair<std::string, Instant>, TweetBucket> unique;  // one bucket per (ticker, hour)
    for (int i = 0; i < 1500; ++i) {
        const Date local = dates.front() + std::chrono::days{day(gen)};
        const auto b = bucket(names[who(gen)], local, hour(gen), n(gen), n(gen), n(gen));
        if (b.hour_start <= align::TradingCalendar::close_of(dates.back())) {
            unique.emplace(std::pair{b.ticker.str(), b.hour_start}, b);
        }
    }
    std::vector<TweetBucket> tweets;
    std::map<std::string, std::int64_t> want;
    for (const auto& [k, b] : unique) {
        tweets.push_back(b);
        want[k.first] += b.total();
    }
    std::map<std::string, std::int64_t> got;
    for (const auto& d : sentiment::daily_counts(tweets, cal)) {
        got[d.ticker.str()] += d.total();
        EXPECT_TRUE(cal.is_trading_day(d.trading_date));
    }
    EXPECT_EQ(got, want);
}

TEST(ReturnsProperty, TradingReturnComposes) {
    std::mt19937_64 gen(21);
    const auto dates = weekdays(ymd(2014, 1, 6), 40);
    const align::TradingCalendar cal(dates);
    for (int trial = 0; trial < 200; ++trial) {
        const auto px = compound(5.0 + trial, random_returns(gen, dates.size() - 1, 0.03));
        const auto bars = bars_of("AAA", dates, px);
        const auto series = returns::PriceSeries::of_bars(bars);
        const auto daily = returns::daily_returns(bars, cal);
        const std::size_t pos = 2 + static_cast<std::size_t>(trial) % 20;
        const auto a = align::anchor_event(event("AAA", eastern::from_local(dates[pos], std::chrono::hours{7}),
                                                 Timing::BeforeOpen),
                                           cal);
        double prod = 1.0;
        for (long d = 0; d <= 10; ++d) {
            prod *= 1.0 + daily.points[pos + static_cast<std::size_t>(d) - 1].second;
            const double rt = returns::trading_return(a, series, d);
            EXPECT_NEAR((1.0 + rt) / prod, 1.0, 1e-12);
        }
    }
}

TEST(ReturnsProperty, ConstantPriceAndScaleInvariance) {
    const auto dates = weekdays(ymd(2014, 1, 6), 20);
    const align::TradingCalendar cal(dates);
    for (const auto& [d, r] : returns::daily_returns(bars_of("AAA", dates, std::vector<double>(20, 37.5)), cal).points) {
        EXPECT_EQ(r, 0.0) << format_date(d);
    }
    std::mt19937_64 gen(22);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
        const double rep = u(gen), est = u(gen), c = u(gen);
        if (std::abs(est) < 1e-3 || std::abs(c) < 1e-3) {
            continue;
        }
        const double es = returns::earnings_surprise(event("AAA", Instant{}, Timing::BeforeOpen, rep, est)).es;
        const double scaled =
            returns::earnings_surprise(event("AAA", Instant{}, Timing::BeforeOpen, rep * c, est * c)).es;
        EXPECT_NEAR(scaled, es, 1e-12 * std::max(1.0, std::abs(es)));
    }
}

TEST(StudyProperty, TelescopingAndLinearVariance) {
    std::mt19937_64 gen(31);
    std::normal_distribution<double> z(0.0, 0.01);
    std::uniform_real_distribution<double> s2(1e-5, 1e-3);
    const study::StudyConfig cfg;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<study::EventAbnormal> evs(1 + static_cast<std::size_t>(trial) % 15);
        for (auto& e : evs) {
            e.ar.resize(cfg.window_length());
            for (auto& v : e.ar) {
                v = z(gen);
            }
            e.sigma2_eps = s2(gen);
        }
        const auto k = study::aggregate_class(EventPolarity::Positive, evs, cfg);
        EXPECT_EQ(k.car[0], k.mean_ar[0]);
        for (std::size_t j = 1; j < k.car.size(); ++j) {
            EXPECT_EQ(k.car[j], k.car[j - 1] + k.mean_ar[j]) << "tau " << k.tau[j];
            EXPECT_NEAR(k.car[j] - k.car[j - 1], k.mean_ar[j], 1e-17);
            EXPECT_NEAR(k.variance[j], static_cast<double>(j + 1) * k.variance[0], 1e-15);
            EXPECT_EQ(k.theta[j], k.car[j] / std::sqrt(k.variance[j]));
        }
    }
}

TEST(StudyProperty, ResidualsOrthogonalToRegressor) {
    std::mt19937_64 gen(32);
    std::normal_distribution<double> z;
    const study::StudyConfig cfg;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x(120), y(120);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = 0.01 * z(gen);
            y[i] = 0.001 * z(gen) + 1.3 * x[i] + 0.02 * z(gen);
        }
        const auto fit = study::fit_market_model(y, x, cfg);
        const auto e = study::abnormal_returns(fit, y, x);
        double sum = 0.0, dot = 0.0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            sum += e[i];
            dot += e[i] * x[i];
        }
        EXPECT_NEAR(sum, 0.0, 1e-10);
        EXPECT_NEAR(dot, 0.0, 1e-10);
    }
}

TEST(RegressionProperty, AffineRescalingOfRegressor) {
    std::mt19937_64 gen(41);
    std::normal_distribution<double> z;
    std::uniform_real_distribution<double> scale(0.1, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::pair<double, double>> pts, moved;
        std::vector<double> xs, ys;
        const double c = scale(gen) * (trial % 2 == 0 ? 1.0 : -1.0), shift = z(gen);
        for (int i = 0; i < 40; ++i) {
            const double x = 0.2 * z(gen);
            const double y = 0.04 + 0.13 * x + 0.05 * z(gen);
            pts.emplace_back(x, y);
            moved.emplace_back(c * x + shift, y);
            xs.push_back(x);
            ys.push_back(y);
        }
        const auto a = regression::fit_es_regression(pts, "a");
        const auto b = regression::fit_es_regression(moved, "b");
        EXPECT_NEAR(b.r_squared, a.r_squared, 1e-10);
        EXPECT_NEAR(b.slope * c, a.slope, 1e-10);

        // slope = cov(x, y) / var(x)
        double mx = 0.0, my = 0.0;
        for (int i = 0; i < 40; ++i) {
            mx += xs[i] / 40.0;
            my += ys[i] / 40.0;
        }
        double cov = 0.0, var = 0.0;
        for (int i = 0; i < 40; ++i) {
            cov += (xs[i] - mx) * (ys[i] - my);
            var += (xs[i] - mx) * (xs[i] - mx);
        }
        EXPECT_NEAR(a.slope, cov / var, 1e-10);
    }
}

TEST(TradingProperty, EquityPositiveAndBenchmarkNormalized) {
    std::mt19937_64 gen(51);
    const auto dates = weekdays(ymd(2014, 1, 6), 60);
    const align::TradingCalendar cal(dates);
    std::uniform_real_distribution<double> sent(-0.5, 0.5);
    std::uniform_int_distribution<std::size_t> when(1, 55);
    for (int trial = 0; trial < 50; ++trial) {
        Dataset ds;
        const auto index_px = compound(1000.0, random_returns(gen, dates.size() - 1, 0.01));
        ds.index = index_of(dates, index_px);
        std::vector<trading::StrategyEvent> evs;
        for (int s = 0; s < 8; ++s) {
            const std::string name = std::string("T") + static_cast<char>('A' + s);
            const auto bars = bars_of(name, dates, compound(20.0, random_returns(gen, dates.size() - 1, 0.2)));
            ds.bars.insert(ds.bars.end(), bars.begin(), bars.end());
            for (int k = 0; k < 3; ++k) {
                const auto ev = event(name, eastern::from_local(dates[when(gen)], std::chrono::hours{17}),
                                      Timing::AfterClose);
                evs.push_back({align::anchor_event(ev, cal), SentimentScore{sent(gen)}});
            }
        }
        const returns::PriceBook book(ds);
        const sentiment::PolarityThresholds th{-0.1, 0.1, 3};
        const trading::StrategyConfig sc{0.05, dates.front(), dates.back()};
        const auto l = trading::run_strategy(evs, book, th, sc);
        ASSERT_EQ(l.equity.size(), dates.size());
        for (std::size_t i = 0; i < l.equity.size(); ++i) {
            EXPECT_GT(l.equity[i].strategy, 0.0);
            EXPECT_NEAR(l.equity[i].benchmark, index_px[i] / index_px[0], 1e-15 * index_px[i] / index_px[0]);
        }
        const auto again = trading::run_strategy(evs, book, th, sc);
        ASSERT_EQ(again.equity.size(), l.equity.size());
        for (std::size_t i = 0; i < l.equity.size(); ++i) {
            EXPECT_EQ(again.equity[i].strategy, l.equity[i].strategy);
        }
    }
}

TEST(TradingProperty, ZeroSpreadSingleTradeIsNegatedTradingReturn) {
    std::mt19937_64 gen(52);
    const auto dates = weekdays(ymd(2014, 1, 6), 10);
    const align::TradingCalendar cal(dates);
    for (int trial = 0; trial < 200; ++trial) {
        Dataset ds;
        ds.index = index_of(dates, std::vector<double>(dates.size(), 1000.0));
        ds.bars = bars_of("AAA", dates, compound(50.0, random_returns(gen, dates.size() - 1, 0.05)));
        const returns::PriceBook book(ds);
        const auto ev = event("AAA", eastern::from_local(dates[4], std::chrono::hours{18}), Timing::AfterClose);
        const std::vector<trading::StrategyEvent> evs{{align::anchor_event(ev, cal), SentimentScore{-0.9}}};
        const auto l = trading::run_strategy(evs, book, {-0.1, 0.1, 3}, {0.0, dates.front(), dates.back()});
        ASSERT_EQ(l.trades.size(), 1u);
        const double rt0 = returns::trading_return(evs[0].anchor, book.stock(Ticker("AAA")), 0);
        EXPECT_NEAR(l.final_equity() - 1.0, -rt0, 1e-15);
    }
}

TEST(AlignmentProperty, RelativeDayMonotoneAndBeforeOpenPrecedesOpen) {
    std::mt19937_64 gen(61);
    const auto dates = weekdays(ymd(2014, 1, 6), 200, {ymd(2014, 1, 20), ymd(2014, 2, 17), ymd(2014, 5, 26)});
    const align::TradingCalendar cal(dates);
    std::uniform_int_distribution<std::size_t> pos(30, 169);
    std::uniform_int_distribution<int> minute(0, 9 * 60 + 29);
    for (int i = 0; i < 500; ++i) {
        const Date d = dates[pos(gen)];
        const Instant at = eastern::from_local(d, std::chrono::minutes{minute(gen)});
        const auto a = align::anchor_event(event("AAA", at, Timing::BeforeOpen), cal);
        EXPECT_LT(at, align::TradingCalendar::open_of(a.day0()));
        for (long k = -20; k < 20; ++k) {
            EXPECT_LT(align::relative_day(a, k), align::relative_day(a, k + 1));
        }
    }
}
