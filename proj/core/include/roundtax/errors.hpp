#ifndef ROUNDTAX_ERRORS_HPP
#define ROUNDTAX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace roundtax {

// Bad user input: malformed numbers, broken CSV rows, distributions that
// don't sum to one. Maps to process exit code 2 in the CLI.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A well-formed request that has no solution, e.g. an overall cash share
// larger than the weights can absorb. Maps to process exit code 3.
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace roundtax

#endif
