#pragma once

#include "easent/error.hpp"
#include "easent/types.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace easent::ingest {

inline constexpr const char* kPricesHeader = "date,ticker,close,volume";
inline constexpr const char* kIndexHeader = "date,close";
inline constexpr const char* kTweetsHeader = "hour_start_utc,ticker,n_neg,n_neut,n_pos";
inline constexpr const char* kEventsHeader =
    "ticker,announce_at_utc,timing,eps_reported,eps_estimated";

inline constexpr const char* kZeroEstimateReason = "zero estimate";
inline constexpr const char* kNoDayZeroTweetsReason = "no day-0 tweets";
inline constexpr const char* kShortHistoryReason = "insufficient estimation window";
inline constexpr const char* kIncompleteWindowReason = "incomplete event window";
inline constexpr const char* kOutsideCalendarReason = "outside calendar";

struct DatasetPaths {
    std::filesystem::path prices;
    std::filesystem::path index;
    std::filesystem::path tweets;
    std::filesystem::path events;

    /// prices.csv, index.csv, tweets.csv and events.csv inside `dir`.
    static DatasetPaths in_directory(const std::filesystem::path& dir);
};

/// Raw file contents, for parsing without touching the filesystem.
struct DatasetText {
    std::string prices;
    std::string index;
    std::string tweets;
    std::string events;
};

/// One rejected input row. `row` is the 1-based data row, `line` the
/// physical line in the file.
struct Diagnostic {
    std::string file;
    long row = 0;
    long line = 0;
    ErrorKind kind = ErrorKind::InvariantViolation;
    std::string column;
    std::string message;

    std::string describe() const;
};

struct FileTally {
    std::string file;
    std::size_t rows = 0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

struct LoadReport {
    Dataset dataset;
    std::vector<Diagnostic> diagnostics;
    std::vector<FileTally> tallies;  // prices, index, tweets, events
};

/// Total parse: every data row is accepted or yields exactly one diagnostic.
/// A header that differs from the schema throws Error(SchemaMismatch).
LoadReport parse_dataset(const DatasetText& text);
LoadReport load_dataset_report(const DatasetPaths& paths);

/// Strict load: throws the first diagnostic as an Error carrying its row.
Dataset load_dataset(const DatasetPaths& paths);
Dataset load_dataset(const DatasetText& text);

/// Canonical CSV emission; re-loading the output reproduces it byte for byte.
DatasetText format_dataset(const Dataset& ds);
void write_dataset(const Dataset& ds, const std::filesystem::path& dir);

struct CoverageOptions {
    long estimation_window = 120;
    long window_first = -1;
    long window_last = 10;
};

struct CoverageReport {
    std::optional<Date> day0;
    std::int64_t day0_tweets = 0;
    std::size_t prior_bars = 0;     // ticker bars dated before day 0
    bool estimation_ok = false;     // every bar needed for the 120 estimation returns exists
    bool event_window_ok = false;   // every bar from day -2 through the window end exists
    bool excluded = false;
    std::string reason;
};

/// Per-event coverage. Events already excluded at load keep their reason.
std::vector<std::pair<EarningsEvent, CoverageReport>>
validate_event_coverage(const Dataset& ds, const CoverageOptions& opts = {});

/// Copy of `ds` whose events carry the exclusion flags from coverage.
Dataset apply_coverage(const Dataset& ds, const CoverageOptions& opts = {});

} // namespace easent::ingest
