#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace facetrank::text {

std::vector<std::string_view> split(std::string_view line, char sep);

/// Shortest form with at most `digits` significant digits ("%.{digits}g").
std::string format_double(double value, int digits = 12);

std::optional<double> parse_double(std::string_view s);
std::optional<std::size_t> parse_size(std::string_view s);

/// Drops a trailing '\r' so CRLF files read like LF files.
std::string_view chomp(std::string_view line);

}  // namespace facetrank::text
