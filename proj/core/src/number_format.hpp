#ifndef ROUNDTAX_NUMBER_FORMAT_HPP
#define ROUNDTAX_NUMBER_FORMAT_HPP

#include <string>

namespace roundtax::detail {

// Shortest decimal string that parses back to exactly the same double.
// Used wherever full precision must survive a text round-trip.
std::string shortest_double(double v);

}  // namespace roundtax::detail

#endif
