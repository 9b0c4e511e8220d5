#include "easent/data_ingest.hpp"
#include "easent/error.hpp"
#include "easent/synth.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace easent;
using namespace easent::testing;

namespace {

ingest::DatasetText tiny() {
    return {
        "date,ticker,close,volume\n"
        "2014-01-06,AAPL,10,100\n"
        "2014-01-07,AAPL,11,100\n"
        "2014-01-08,AAPL,12,100\n",
        "date,close\n"
        "2014-01-06,100\n"
        "2014-01-07,101\n"
        "2014-01-08,102\n",
        "hour_start_utc,ticker,n_neg,n_neut,n_pos\n"
        "2014-01-07T15:00:00Z,AAPL,1,2,3\n",
        "ticker,announce_at_utc,timing,eps_reported,eps_estimated\n"
        "AAPL,2014-01-06T21:30:00Z,AfterClose,1.1,1.0\n",
    };
}

ErrorKind thrown_kind(const ingest::DatasetText& t) {
    try {
        ingest::load_dataset(t);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Io;
}

} // namespace

TEST(Ingest, LoadsValidDataset) {
    const auto ds = ingest::load_dataset(tiny());
    EXPECT_EQ(ds.bars.size(), 3u);
    EXPECT_EQ(ds.index.size(), 3u);
    EXPECT_EQ(ds.tweets.size(), 1u);
    ASSERT_EQ(ds.events.size(), 1u);
    EXPECT_EQ(ds.events[0].timing, Timing::AfterClose);
    EXPECT_FALSE(ds.events[0].excluded);
}

TEST(Ingest, HeaderMismatchIsSchemaError) {
    auto t = tiny();
    t.prices = "date,symbol,close,volume\n2014-01-06,AAPL,10,100\n";
    try {
        ingest::parse_dataset(t);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SchemaMismatch);
        EXPECT_EQ(e.row(), 0);
    }
}

TEST(Ingest, EveryRowAcceptedOrDiagnosed) {
    auto t = tiny();
    t.prices += "2014-01-08,AAPL,13,100\n"   // duplicate bar
                "2014-01-09,AAPL,13,100\n"   // no index bar
                "2014-01-07,MSFT,-1,100\n"   // bad close
                "2014-01-07,msft,1,100\n"    // bad ticker
                "2014-01-07,MSFT,1\n"        // short row
                "2014-13-07,MSFT,1,5\n";     // bad date
    t.events += "AAPL,2014-01-07T16:00:00Z,AfterClose,1,1\n"   // 11:00 local
                "AAPL,2014-01-07T12:00:00Z,AfterClose,1,1\n"   // 07:00 local, wrong timing
                "ZZZ,2014-01-07T22:00:00Z,AfterClose,1,1\n"    // no bars
                "AAPL,2014-01-06T21:30:00Z,AfterClose,1,1\n";  // duplicate
    const auto rep = ingest::parse_dataset(t);
    ASSERT_EQ(rep.tallies.size(), 4u);
    for (const auto& tally : rep.tallies) {
        EXPECT_EQ(tally.rows, tally.accepted + tally.rejected) << tally.file;
    }
    EXPECT_EQ(rep.tallies[0].rejected, 6u);
    EXPECT_EQ(rep.tallies[3].rejected, 4u);
    EXPECT_EQ(rep.diagnostics.size(), 10u);
    EXPECT_EQ(rep.dataset.bars.size(), 3u);
    EXPECT_EQ(rep.dataset.events.size(), 1u);
    // first data row after the three good ones
    EXPECT_EQ(rep.diagnostics.front().file, "prices.csv");
    EXPECT_EQ(rep.diagnostics.front().row, 4);
    EXPECT_EQ(rep.diagnostics.front().line, 5);
}

TEST(Ingest, StrictLoadThrowsFirstDiagnostic) {
    auto t = tiny();
    t.index += "2014-01-08,103\n";
    EXPECT_EQ(thrown_kind(t), ErrorKind::InvariantViolation);
    t = tiny();
    t.tweets += "2014-01-07T15:30:00Z,AAPL,1,1,1\n";
    EXPECT_EQ(thrown_kind(t), ErrorKind::InvariantViolation);
    t = tiny();
    t.events += "AAPL,2014-01-07T22:00:00Z,Sometime,1,1\n";
    EXPECT_EQ(thrown_kind(t), ErrorKind::SchemaMismatch);
}

TEST(Ingest, ZeroEstimateFlagged) {
    auto t = tiny();
    t.events = "ticker,announce_at_utc,timing,eps_reported,eps_estimated\n"
               "AAPL,2014-01-06T21:30:00Z,AfterClose,0.2,0\n";
    const auto ds = ingest::load_dataset(t);
    ASSERT_EQ(ds.events.size(), 1u);
    EXPECT_TRUE(ds.events[0].excluded);
    EXPECT_EQ(ds.events[0].exclusion_reason, ingest::kZeroEstimateReason);
}

TEST(Ingest, MissingFile) {
    const auto dir = scratch_dir("ingest_missing");
    try {
        ingest::load_dataset(ingest::DatasetPaths::in_directory(dir));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MissingFile);
    }
}

TEST(Ingest, CanonicalRoundTripIsByteIdentical) {
    synth::SynthSpec spec;
    spec.tickers = 4;
    spec.days = 300;
    const auto ds = synth::generate(spec);
    const auto text = ingest::format_dataset(ds);
    const auto again = ingest::format_dataset(ingest::load_dataset(text));
    EXPECT_EQ(text.prices, again.prices);
    EXPECT_EQ(text.index, again.index);
    EXPECT_EQ(text.tweets, again.tweets);
    EXPECT_EQ(text.events, again.events);

    const auto dir = scratch_dir("ingest_roundtrip");
    ingest::write_dataset(ds, dir);
    const auto from_disk = ingest::format_dataset(ingest::load_dataset(ingest::DatasetPaths::in_directory(dir)));
    EXPECT_EQ(text.prices, from_disk.prices);
    EXPECT_EQ(text.events, from_disk.events);
}

TEST(Coverage, ReasonsInPriorityOrder) {
    const auto dates = weekdays(ymd(2014, 1, 6), 140);
    std::vector<double> px(dates.size(), 50.0);
    Dataset ds;
    ds.index = index_of(dates, std::vector<double>(dates.size(), 1000.0));
    ds.bars = bars_of("AAPL", dates, px);
    auto short_bars = bars_of("KO", std::vector<Date>(dates.begin() + 100, dates.end()),
                              std::vector<double>(dates.size() - 100, 20.0));
    ds.bars.insert(ds.bars.end(), short_bars.begin(), short_bars.end());
    const Date late = dates[125];
    const Date tail = dates[135];
    for (const char* t : {"AAPL", "KO"}) {
        ds.tweets.push_back(bucket(t, late, 11, 1, 1, 1));
        ds.tweets.push_back(bucket(t, tail, 11, 1, 1, 1));
    }
    ds.events = {
        event("AAPL", eastern::from_local(late, std::chrono::hours{8}), Timing::BeforeOpen),     // ok
        event("AAPL", eastern::from_local(dates[120], std::chrono::hours{8}), Timing::BeforeOpen),  // no tweets
        event("KO", eastern::from_local(late, std::chrono::hours{8}), Timing::BeforeOpen),       // short history
        event("AAPL", eastern::from_local(tail, std::chrono::hours{8}), Timing::BeforeOpen),     // window cut
        event("AAPL", eastern::from_local(dates.back(), std::chrono::hours{17}), Timing::AfterClose),  // outside
    };
    const auto cov = ingest::validate_event_coverage(ds);
    ASSERT_EQ(cov.size(), 5u);
    EXPECT_FALSE(cov[0].second.excluded);
    EXPECT_TRUE(cov[0].second.estimation_ok);
    EXPECT_TRUE(cov[0].second.event_window_ok);
    EXPECT_EQ(cov[0].second.day0_tweets, 3);
    EXPECT_EQ(cov[1].second.reason, ingest::kNoDayZeroTweetsReason);
    EXPECT_EQ(cov[2].second.reason, ingest::kShortHistoryReason);
    EXPECT_EQ(cov[3].second.reason, ingest::kIncompleteWindowReason);
    EXPECT_EQ(cov[4].second.reason, ingest::kOutsideCalendarReason);

    const auto marked = ingest::apply_coverage(ds);
    EXPECT_FALSE(marked.events[0].excluded);
    EXPECT_TRUE(marked.events[2].excluded);
}

TEST(Coverage, EstimationNeedsBarsBackToDayMinus122) {
    const auto dates = weekdays(ymd(2014, 1, 6), 140);
    Dataset ds;
    ds.index = index_of(dates, std::vector<double>(dates.size(), 1000.0));
    ds.bars = bars_of("AAPL", dates, std::vector<double>(dates.size(), 5.0));
    for (std::size_t p : {121u, 122u}) {
        ds.tweets = {bucket("AAPL", dates[p], 11, 0, 1, 0)};
        ds.events = {event("AAPL", eastern::from_local(dates[p], std::chrono::hours{8}), Timing::BeforeOpen)};
        const auto cov = ingest::validate_event_coverage(ds);
        EXPECT_EQ(cov[0].second.estimation_ok, p >= 122) << p;
    }
}
