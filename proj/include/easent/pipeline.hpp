#pragma once

#include "easent/alignment.hpp"
#include "easent/data_ingest.hpp"
#include "easent/event_study.hpp"
#include "easent/regression.hpp"
#include "easent/returns.hpp"
#include "easent/sentiment.hpp"
#include "easent/trading.hpp"
#include "easent/volume.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace easent::pipeline {

/// Everything a run needs. Loaded from one JSON file; CLI flags override.
struct RunConfig {
    std::filesystem::path data_dir;  // holds the four CSVs unless overridden below
    std::optional<std::filesystem::path> prices_path;
    std::optional<std::filesystem::path> index_path;
    std::optional<std::filesystem::path> tweets_path;
    std::optional<std::filesystem::path> events_path;
    std::filesystem::path out_dir = "out";

    study::StudyConfig study;
    long polarity_day = 0;  // 0 or -1
    std::optional<Timing> timing;  // unset: both
    long max_d = 10;
    long volume_radius = 2;
    double surprise_cutoff = 0.025;

    double spread = 0.05;
    std::optional<Date> backtest_from;
    std::optional<Date> backtest_to;
    /// Thresholds are computed from events with day 0 on or before this date.
    std::optional<Date> threshold_end;

    std::uint64_t seed = 42;

    ingest::DatasetPaths paths() const;
    /// Throws Error(InvalidConfig).
    void validate() const;
};

void to_json(nlohmann::json& j, const RunConfig& c);
/// Missing keys keep their defaults; unknown keys throw Error(InvalidConfig).
void from_json(const nlohmann::json& j, RunConfig& c);
RunConfig load_config(const std::filesystem::path& path);

/// (timing, relative day) stratum of the threshold table.
struct Stratum {
    Timing timing;
    long day;  // 0 or -1

    std::string label() const;  // e.g. afterclose_day0, beforeopen_day-1
    friend auto operator<=>(const Stratum&, const Stratum&) = default;
};

inline constexpr Stratum kStrata[] = {{Timing::AfterClose, 0},
                                      {Timing::AfterClose, -1},
                                      {Timing::BeforeOpen, 0},
                                      {Timing::BeforeOpen, -1}};

struct EventRecord {
    EarningsEvent event;  // exclusion flags from coverage
    ingest::CoverageReport coverage;
    std::optional<align::EventAnchor> anchor;
    sentiment::SentimentScore sent0;
    sentiment::SentimentScore sent_prev;
    std::optional<double> es;

    sentiment::SentimentScore sent(long day) const { return day == 0 ? sent0 : sent_prev; }
    bool usable() const { return !event.excluded && anchor.has_value(); }
};

/// Loaded dataset with coverage applied and per-event features.
class Analysis {
public:
    Analysis(const Dataset& ds, const RunConfig& cfg);

    const Dataset& dataset() const { return ds_; }
    const align::TradingCalendar& calendar() const { return cal_; }
    const returns::PriceBook& book() const { return book_; }
    const std::vector<sentiment::DailyTweetCounts>& daily() const { return daily_; }
    const std::vector<EventRecord>& events() const { return events_; }

    /// Throws Error(TooFewEvents) when the stratum has fewer than three usable events.
    sentiment::PolarityThresholds thresholds(const Stratum& s) const;
    std::vector<study::LabeledEvent> labeled(const Stratum& s,
                                             const sentiment::PolarityThresholds& th) const;

    study::EventStudyResult study(const Stratum& s) const;
    trading::TradeReturnCurves curves(const Stratum& s) const;
    trading::TradeLedger backtest() const;
    regression::RegressionFit regress(const Stratum& s) const;
    report::VolumeReport volume() const;

private:
    RunConfig cfg_;
    Dataset ds_;
    align::TradingCalendar cal_;
    returns::PriceBook book_;
    std::vector<sentiment::DailyTweetCounts> daily_;
    std::vector<EventRecord> events_;
};

// CSV renderers; every output ends with a newline and is byte-stable.
std::string calendar_csv(const align::TradingCalendar& cal);
std::string score_csv(const std::vector<sentiment::DailyTweetCounts>& daily);
std::string thresholds_csv(const std::map<Stratum, sentiment::PolarityThresholds>& th);
/// Summary layout: one row per polarity, one interval column per stratum, 2 decimals.
std::string thresholds_table_csv(const std::map<Stratum, sentiment::PolarityThresholds>& th);
std::string returns_csv(const Dataset& ds, const align::TradingCalendar& cal);
std::string surprise_csv(const std::vector<EventRecord>& events);
std::string study_csv(const study::EventStudyResult& r);
std::string curves_csv(const trading::TradeReturnCurves& c);
std::string trades_csv(const trading::TradeLedger& l);
std::string equity_csv(const trading::TradeLedger& l);
std::string regression_csv(const std::vector<regression::RegressionFit>& fits);
std::string volume_daily_csv(const report::VolumeReport& r);
std::string volume_hourly_csv(const report::VolumeReport& r);
std::string volume_summary_csv(const report::VolumeReport& r);
std::string events_csv(const std::vector<EventRecord>& events);
std::string ingest_report_csv(const ingest::LoadReport& r);

std::map<Stratum, sentiment::PolarityThresholds> all_thresholds(const Analysis& a,
                                                                std::vector<std::string>* skipped);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Writes a set of files into `dir` atomically: content is staged in a hidden
/// sibling directory and moved into place only when every write succeeded.
void write_outputs(const std::filesystem::path& dir, const std::map<std::string, std::string>& files);

struct PipelineResult {
    std::map<std::string, std::string> files;  // name -> content, manifest excluded
    nlohmann::json manifest;
};

/// Full analysis. Strata with fewer than three events are skipped and listed
/// in the manifest.
PipelineResult run_pipeline(const RunConfig& cfg);

} // namespace easent::pipeline
