#ifndef ROUNDTAX_EXPECTATION_HPP
#define ROUNDTAX_EXPECTATION_HPP

#include <array>
#include <cstdint>

#include "roundtax/distributions.hpp"
#include "roundtax/rounding.hpp"

namespace roundtax {

// Distribution of a total's last agora digit, i.e. its residue mod 10.
// Internal results must stay normalized to 1e-12; a violation means a bug
// in the convolution, not bad input, hence std::logic_error.
class ResidueDistribution {
public:
    explicit ResidueDistribution(const std::array<double, 10>& probabilities);

    double probability(int residue) const { return probabilities_[residue]; }
    const std::array<double, 10>& probabilities() const { return probabilities_; }

    static constexpr double kSumTolerance = 1e-12;

private:
    std::array<double, 10> probabilities_;
};

// Cyclic convolution mod 10: the residue distribution of a sum of two
// independent residues. Exposed so the semigroup laws can be checked.
ResidueDistribution cyclic_convolve(const ResidueDistribution& a,
                                    const ResidueDistribution& b);

// Residue distribution of the sum of n iid price endings, by squaring:
// O(log n) convolutions. n < 1 throws std::domain_error.
ResidueDistribution convolve_endings(const EndingDistribution& endings, std::int64_t n);

// Exact expected rounding charge per transaction in NIS: mixes the basket
// size law with the per-size residue law and applies the rule's deltas.
// The rule's grid must divide 10.
double expected_tax_per_transaction(const StoreProfile& profile, const RoundingRule& rule);

}  // namespace roundtax

#endif
