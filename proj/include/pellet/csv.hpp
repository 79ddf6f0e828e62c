#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pellet::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<int> line_numbers;  // 1-based source line of each row
};

/// RFC 4180-style reader: quoted fields, doubled quotes, CRLF tolerated.
/// A leading UTF-8 BOM is skipped. Blank lines are ignored.
Table parse(std::string_view text);

/// Locale-independent number parsing. "-" and empty are null.
bool is_null(std::string_view cell);
std::optional<double> parse_number(std::string_view cell);

/// Shortest representation that round-trips; "-" for nullopt.
std::string format_number(double v);
std::string format_number(const std::optional<double>& v);

std::string quote(std::string_view field);
std::string join_row(const std::vector<std::string>& fields);

std::string read_file(const std::string& path);

}  // namespace pellet::csv
