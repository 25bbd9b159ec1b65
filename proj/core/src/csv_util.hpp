#ifndef ROUNDTAX_CSV_UTIL_HPP
#define ROUNDTAX_CSV_UTIL_HPP

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace roundtax::detail {

// Throws ValidationError with a "source:line: what" message.
[[noreturn]] void row_error(std::string_view source, std::size_t line,
                            const std::string& what);

// Plain comma split; the formats here never quote fields.
std::vector<std::string> split_csv_row(const std::string& line);

// getline that also strips a trailing \r from CRLF files.
bool next_csv_line(std::istream& in, std::string& line);

// Line 1 must equal `expected` byte for byte.
void expect_csv_header(std::istream& in, std::string_view expected,
                       std::string_view source);

// Full-field numeric parses; partial matches are errors.
double parse_double_field(const std::string& field, std::string_view source,
                          std::size_t line);
int parse_int_field(const std::string& field, std::string_view source,
                    std::size_t line);

// Store names are identifiers: [A-Za-z0-9_-]+.
std::string checked_store_name(const std::string& field, std::string_view source,
                               std::size_t line);

}  // namespace roundtax::detail

#endif
