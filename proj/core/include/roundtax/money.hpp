#ifndef ROUNDTAX_MONEY_HPP
#define ROUNDTAX_MONEY_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace roundtax {

// An exact amount of money counted in minor units (agorot; 100 per NIS).
// Never a float: parse/format round-trip losslessly and arithmetic is
// plain integer arithmetic.
class MinorUnits {
public:
    constexpr MinorUnits() : agorot_(0) {}
    constexpr explicit MinorUnits(std::int64_t agorot) : agorot_(agorot) {}

    // Accepts "[sign]digits[.d or .dd]", e.g. "12", "-3.5", "0.07".
    // At most 16 whole digits so the agorot value fits an int64 with room
    // to spare. Anything else throws ValidationError.
    static MinorUnits parse(std::string_view text);

    // Decimal string with exactly two fraction digits: "19.98", "-0.05".
    std::string format() const;

    constexpr std::int64_t agorot() const { return agorot_; }

    constexpr MinorUnits operator+(MinorUnits other) const {
        return MinorUnits(agorot_ + other.agorot_);
    }
    constexpr MinorUnits operator-(MinorUnits other) const {
        return MinorUnits(agorot_ - other.agorot_);
    }
    constexpr MinorUnits operator-() const { return MinorUnits(-agorot_); }

    friend constexpr auto operator<=>(MinorUnits, MinorUnits) = default;

private:
    std::int64_t agorot_;
};

}  // namespace roundtax

#endif
