#include "number_format.hpp"

#include <charconv>
#include <cstdio>
#include <cstring>

namespace roundtax::detail {

std::string shortest_double(double v) {
    char buf[40];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
        double roundtrip = 0.0;
        auto [ptr, ec] = std::from_chars(buf, buf + std::strlen(buf), roundtrip);
        (void)ptr;
        if (ec == std::errc() && roundtrip == v) break;
    }
    return buf;
}

}  // namespace roundtax::detail
