#include "easent/error.hpp"

namespace easent {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::MissingFile: return "MissingFile";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::OutOfCalendarRange: return "OutOfCalendarRange";
    case ErrorKind::NonTradingAnnouncement: return "NonTradingAnnouncement";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::TooFewEvents: return "TooFewEvents";
    case ErrorKind::GapInSeries: return "GapInSeries";
    case ErrorKind::MissingBar: return "MissingBar";
    case ErrorKind::ZeroEstimate: return "ZeroEstimate";
    case ErrorKind::InsufficientHistory: return "InsufficientHistory";
    case ErrorKind::DegenerateRegressor: return "DegenerateRegressor";
    case ErrorKind::EmptyClass: return "EmptyClass";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::MissingFile: return 10;
    case ErrorKind::SchemaMismatch: return 11;
    case ErrorKind::InvariantViolation: return 12;
    case ErrorKind::OutOfCalendarRange: return 13;
    case ErrorKind::NonTradingAnnouncement: return 14;
    case ErrorKind::ZeroDenominator: return 15;
    case ErrorKind::TooFewEvents: return 16;
    case ErrorKind::GapInSeries: return 17;
    case ErrorKind::MissingBar: return 18;
    case ErrorKind::ZeroEstimate: return 19;
    case ErrorKind::InsufficientHistory: return 20;
    case ErrorKind::DegenerateRegressor: return 21;
    case ErrorKind::EmptyClass: return 22;
    case ErrorKind::TooFewPoints: return 23;
    case ErrorKind::InvalidSpec: return 24;
    case ErrorKind::InvalidConfig: return 25;
    case ErrorKind::Io: return 26;
    }
    return 1;
}

Error::Error(ErrorKind kind, const std::string& message, long row)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), row_(row) {}

} // namespace easent
