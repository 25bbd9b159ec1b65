#include "roundtax/money.hpp"

#include <cstdint>

#include "doctest.h"
#include "roundtax/errors.hpp"

using roundtax::MinorUnits;
using roundtax::ValidationError;

TEST_CASE("parse accepts whole and fractional amounts") {
    CHECK(MinorUnits::parse("19.98").agorot() == 1998);
    CHECK(MinorUnits::parse("12").agorot() == 1200);
    CHECK(MinorUnits::parse("0.07").agorot() == 7);
    CHECK(MinorUnits::parse("0.7").agorot() == 70);
    CHECK(MinorUnits::parse("-3.5").agorot() == -350);
    CHECK(MinorUnits::parse("+3.5").agorot() == 350);
    CHECK(MinorUnits::parse("0").agorot() == 0);
    CHECK(MinorUnits::parse("-0.01").agorot() == -1);
    CHECK(MinorUnits::parse("9999999999999999.99").agorot() == 999999999999999999LL);
}

TEST_CASE("parse rejects everything that is not a plain decimal") {
    const char* bad[] = {
        "",      "-",      "+",     "abc", "1.234", "1.",   ".5",
        "1e5",   "0x10",   "1 2",   " 1",  "1 ",    "--1",  "1.2.3",
        "12345678901234567",  // more than 16 whole digits
        "1,000", "NaN",    "inf",
    };
    for (const char* text : bad) {
        CAPTURE(text);
        CHECK_THROWS_AS(MinorUnits::parse(text), ValidationError);
    }
}

TEST_CASE("format always prints two fraction digits") {
    CHECK(MinorUnits(1998).format() == "19.98");
    CHECK(MinorUnits(1200).format() == "12.00");
    CHECK(MinorUnits(7).format() == "0.07");
    CHECK(MinorUnits(70).format() == "0.70");
    CHECK(MinorUnits(0).format() == "0.00");
    CHECK(MinorUnits(-350).format() == "-3.50");
    CHECK(MinorUnits(-1).format() == "-0.01");
    CHECK(MinorUnits(-123456789).format() == "-1234567.89");
}

TEST_CASE("format handles the most negative amount") {
    CHECK(MinorUnits(INT64_MIN).format() == "-92233720368547758.08");
}

TEST_CASE("parse and format round-trip losslessly") {
    const char* samples[] = {"0", "0.01", "19.98", "12", "-3.5", "1000000.5",
                             "9999999999999999.99", "-0.09"};
    for (const char* text : samples) {
        CAPTURE(text);
        MinorUnits once = MinorUnits::parse(text);
        CHECK(MinorUnits::parse(once.format()) == once);
    }
}

TEST_CASE("arithmetic is exact integer arithmetic") {
    MinorUnits a(1998);
    MinorUnits b(7);
    CHECK((a + b).agorot() == 2005);
    CHECK((a - b).agorot() == 1991);
    CHECK((-a).agorot() == -1998);
    CHECK(a > b);
    CHECK(b < a);
    CHECK(a == MinorUnits(1998));
    CHECK(a != b);
}
