#include "roundtax/expectation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace roundtax {

ResidueDistribution::ResidueDistribution(const std::array<double, 10>& probabilities)
    : probabilities_(probabilities) {
    double sum = 0.0;
    for (int r = 0; r < 10; ++r) {
        double p = probabilities_[r];
        if (!(p >= 0.0 && p <= 1.0 + kSumTolerance)) {
            throw std::logic_error("residue probability for " + std::to_string(r) +
                                   " outside [0,1]: " + std::to_string(p));
        }
        sum += p;
    }
    if (std::fabs(sum - 1.0) > kSumTolerance) {
        throw std::logic_error("residue probabilities sum to " + std::to_string(sum) +
                               ", not 1");
    }
}

namespace {

// The convolution of two unit-mass vectors has exactly unit mass, so any
// deviation in the computed sum is floating-point drift. Dividing it out
// keeps the 1e-12 contract across the ~60 squarings a 64-bit item count
// can demand; without this the drift compounds per convolution.
std::array<double, 10> normalized(std::array<double, 10> p) {
    double sum = 0.0;
    for (double v : p) sum += v;
    for (double& v : p) v /= sum;
    return p;
}

}  // namespace

ResidueDistribution cyclic_convolve(const ResidueDistribution& a,
                                    const ResidueDistribution& b) {
    std::array<double, 10> out{};
    for (int i = 0; i < 10; ++i) {
        double pa = a.probability(i);
        if (pa == 0.0) continue;
        for (int j = 0; j < 10; ++j) {
            out[(i + j) % 10] += pa * b.probability(j);
        }
    }
    return ResidueDistribution(normalized(out));
}

ResidueDistribution convolve_endings(const EndingDistribution& endings, std::int64_t n) {
    if (n < 1) {
        throw std::domain_error("basket size must be >= 1, got " + std::to_string(n));
    }
    // Ending distributions are validated to 1e-9 only; project onto exact
    // unit mass before entering the 1e-12 regime.
    ResidueDistribution base(normalized(endings.probabilities()));
    // Exponentiation by squaring; identity is a point mass at residue 0.
    std::array<double, 10> identity{};
    identity[0] = 1.0;
    ResidueDistribution acc(identity);
    while (n > 0) {
        if (n & 1) acc = cyclic_convolve(acc, base);
        n >>= 1;
        if (n > 0) base = cyclic_convolve(base, base);
    }
    return acc;
}

double expected_tax_per_transaction(const StoreProfile& profile, const RoundingRule& rule) {
    if (10 % rule.grid() != 0) {
        throw std::domain_error(
            "rounding grid must divide 10 to apply to ending digits, got " +
            std::to_string(rule.grid()));
    }
    auto deltas = delta_by_residue(rule);
    double expected_agorot = 0.0;
    for (const auto& [size, q] : profile.baskets.masses()) {
        ResidueDistribution dist = convolve_endings(profile.endings, size);
        double conditional = 0.0;
        for (int r = 0; r < 10; ++r) {
            conditional += dist.probability(r) * static_cast<double>(deltas[r % rule.grid()]);
        }
        expected_agorot += q * conditional;
    }
    return expected_agorot / 100.0;
}

}  // namespace roundtax
