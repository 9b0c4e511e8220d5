#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace easent::csv {

/// One parsed file: header fields plus data rows in file order. Blank lines
/// are skipped but still counted so `line_numbers` match the source.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<long> line_numbers;
};

/// RFC 4180 field splitting with double-quote escaping; strips a trailing CR.
std::vector<std::string> split_record(std::string_view line);

Table parse(std::string_view content);
/// Throws Error(MissingFile) when the path is absent or unreadable.
Table read_file(const std::filesystem::path& path);

std::optional<double> to_double(std::string_view field);
std::optional<std::int64_t> to_int(std::string_view field);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// Quotes a field only when it contains a separator, quote or newline.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

} // namespace easent::csv
