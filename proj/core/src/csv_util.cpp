#include "csv_util.hpp"

#include <charconv>

#include "roundtax/errors.hpp"

namespace roundtax::detail {

void row_error(std::string_view source, std::size_t line, const std::string& what) {
    throw ValidationError(std::string(source) + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

bool next_csv_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

void expect_csv_header(std::istream& in, std::string_view expected,
                       std::string_view source) {
    std::string line;
    if (!next_csv_line(in, line)) {
        throw ValidationError(std::string(source) + ": empty file, expected header \"" +
                              std::string(expected) + "\"");
    }
    if (line != expected) {
        throw ValidationError(std::string(source) + ":1: expected header \"" +
                              std::string(expected) + "\", got \"" + line + "\"");
    }
}

double parse_double_field(const std::string& field, std::string_view source,
                          std::size_t line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        row_error(source, line, "bad number: \"" + field + "\"");
    }
    return value;
}

int parse_int_field(const std::string& field, std::string_view source, std::size_t line) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        row_error(source, line, "bad integer: \"" + field + "\"");
    }
    return value;
}

std::string checked_store_name(const std::string& field, std::string_view source,
                               std::size_t line) {
    bool ok = !field.empty();
    for (char c : field) {
        ok = ok && ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-');
    }
    if (!ok) {
        row_error(source, line, "bad store name: \"" + field + "\"");
    }
    return field;
}

}  // namespace roundtax::detail
