#include "easent/csv.hpp"

#include "easent/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace easent::csv {

std::vector<std::string> split_record(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(ch);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

Table parse(std::string_view content) {
    Table table;
    bool have_header = false;
    long line_no = 0;
    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t end = content.find('\n', pos);
        if (end == std::string_view::npos) {
            end = content.size();
        }
        std::string_view line = content.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.empty() || line == "\r") {
            continue;
        }
        if (!have_header) {
            // tolerate a UTF-8 byte order mark
            if (line.size() >= 3 && line.substr(0, 3) == "\xEF\xBB\xBF") {
                line.remove_prefix(3);
            }
            table.header = split_record(line);
            have_header = true;
            continue;
        }
        table.rows.push_back(split_record(line));
        table.line_numbers.push_back(line_no);
    }
    return table;
}

Table read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::MissingFile, "cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::optional<double> to_double(std::string_view field) {
    if (field.empty()) {
        return std::nullopt;
    }
    if (field.front() == '+') {
        field.remove_prefix(1);
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

std::optional<std::int64_t> to_int(std::string_view field) {
    if (field.empty()) {
        return std::nullopt;
    }
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        return std::nullopt;
    }
    return v;
}

std::string format_double(double v) {
    if (v == 0.0) {
        return "0";  // folds -0
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') {
            out.push_back('"');
        }
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) {
            out << ',';
        }
        out << escape(fields[i]);
    }
    out << '\n';
}

} // namespace easent::csv
