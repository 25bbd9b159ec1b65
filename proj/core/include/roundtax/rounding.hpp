#ifndef ROUNDTAX_ROUNDING_HPP
#define ROUNDTAX_ROUNDING_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "roundtax/money.hpp"

namespace roundtax {

enum class RoundDirection { kDown, kUp };

// A cash rounding rule: a grid size in agorot plus, for each nonzero
// residue mod the grid, whether that residue rounds down or up. Residue 0
// is always exact and is not part of the policy.
class RoundingRule {
public:
    // policy[i] is the direction for residue i+1; its size must be grid-1.
    RoundingRule(int grid, std::vector<RoundDirection> policy);

    // Israel's rule from January 2008 on: 10-agora grid, endings 1-4 round
    // down, endings 5-9 round up. Note 5 goes up, not to nearest.
    static RoundingRule israel_2008();

    // Round half away from zero on the given grid: residues below grid/2
    // go down, the rest go up. symmetric(5) is the pre-2008 Israeli rule.
    static RoundingRule symmetric(int grid);

    // Accepts the names "israel_2008" and "symmetric_5", or the explicit
    // form produced by format(): "grid=<n>; down=<r,...>; up=<r,...>".
    // Every residue 1..grid-1 must appear exactly once across both lists.
    static RoundingRule parse(std::string_view text);

    std::string format() const;

    int grid() const { return grid_; }

    // residue must be in [1, grid-1].
    RoundDirection direction(int residue) const;

    friend bool operator==(const RoundingRule&, const RoundingRule&) = default;

private:
    int grid_;
    std::vector<RoundDirection> policy_;
};

// The amount actually charged when `amount` is paid in cash. Negative
// amounts are outside the model and throw std::domain_error.
MinorUnits round_amount(MinorUnits amount, const RoundingRule& rule);

// rounded minus exact: positive when the payer loses to rounding.
MinorUnits rounding_delta(MinorUnits amount, const RoundingRule& rule);

// delta for each residue 0..grid-1, in agorot. Index 0 is always 0.
std::vector<std::int64_t> delta_by_residue(const RoundingRule& rule);

}  // namespace roundtax

#endif
