#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scenario {

/// Shortest decimal that parses back to the same double; always carries a
/// decimal point or exponent ("1.0", not "1").
std::string format_real(double value);

/// Empty string for nullopt.
std::string format_optional(const std::optional<double>& value);

/// Strict full-string parse; throws InvalidArgument on trailing garbage.
double parse_real(std::string_view text);
long long parse_integer(std::string_view text);

std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace scenario
