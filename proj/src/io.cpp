#include "scenario/io.hpp"

#include <array>
#include <charconv>
#include <string>

#include "scenario/core.hpp"

namespace scenario {

std::string format_real(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    std::string out(buf.data(), res.ptr);
    if (out.find_first_of(".eEni") == std::string::npos) {
        out += ".0";
    }
    return out;
}

std::string format_optional(const std::optional<double>& value) {
    return value ? format_real(*value) : std::string{};
}

double parse_real(std::string_view text) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw InvalidArgument("not a real number: '" + std::string(text) + "'");
    }
    return v;
}

long long parse_integer(std::string_view text) {
    long long v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw InvalidArgument("not an integer: '" + std::string(text) + "'");
    }
    return v;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

}  // namespace scenario
