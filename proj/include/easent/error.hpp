#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace easent {

enum class ErrorKind {
    MissingFile,
    SchemaMismatch,
    InvariantViolation,
    OutOfCalendarRange,
    NonTradingAnnouncement,
    ZeroDenominator,
    TooFewEvents,
    GapInSeries,
    MissingBar,
    ZeroEstimate,
    InsufficientHistory,
    DegenerateRegressor,
    EmptyClass,
    TooFewPoints,
    InvalidSpec,
    InvalidConfig,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// Process exit code the CLI uses for a given error kind. Always nonzero.
int exit_code(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (and the CLI)
/// can branch without parsing messages. `row` is the 1-based data row for
/// ingest errors (header is row 0) and -1 otherwise.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, long row = -1);

    ErrorKind kind() const noexcept { return kind_; }
    long row() const noexcept { return row_; }

private:
    ErrorKind kind_;
    long row_;
};

} // namespace easent
