#include "roundtax/money.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>

#include "roundtax/errors.hpp"

namespace roundtax {

namespace {

[[noreturn]] void bad_amount(std::string_view text) {
    throw ValidationError("not a money amount: \"" + std::string(text) + "\"");
}

}  // namespace

MinorUnits MinorUnits::parse(std::string_view text) {
    std::string_view rest = text;
    bool negative = false;
    if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }
    if (rest.empty()) bad_amount(text);

    std::int64_t whole = 0;
    std::size_t i = 0;
    while (i < rest.size() && std::isdigit(static_cast<unsigned char>(rest[i]))) {
        whole = whole * 10 + (rest[i] - '0');
        ++i;
    }
    if (i == 0 || i > 16) bad_amount(text);

    std::int64_t cents = 0;
    if (i < rest.size()) {
        if (rest[i] != '.') bad_amount(text);
        ++i;
        std::size_t frac_start = i;
        while (i < rest.size() && std::isdigit(static_cast<unsigned char>(rest[i]))) ++i;
        std::size_t frac_digits = i - frac_start;
        if (i != rest.size() || frac_digits < 1 || frac_digits > 2) bad_amount(text);
        cents = rest[frac_start] - '0';
        cents = frac_digits == 2 ? cents * 10 + (rest[frac_start + 1] - '0') : cents * 10;
    }

    std::int64_t agorot = whole * 100 + cents;
    return MinorUnits(negative ? -agorot : agorot);
}

std::string MinorUnits::format() const {
    // Negate via unsigned so INT64_MIN doesn't overflow.
    std::uint64_t magnitude = agorot_ < 0
        ? ~static_cast<std::uint64_t>(agorot_) + 1
        : static_cast<std::uint64_t>(agorot_);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%" PRIu64 ".%02u",
                  agorot_ < 0 ? "-" : "",
                  magnitude / 100,
                  static_cast<unsigned>(magnitude % 100));
    return buf;
}

}  // namespace roundtax
