#ifndef ROUNDTAX_TESTS_ORACLES_HPP
#define ROUNDTAX_TESTS_ORACLES_HPP

// Test-only reference implementations that share no code with the
// library's algorithms: exhaustive enumeration where the engine
// convolves, raw arithmetic where the engine accumulates. Slow on
// purpose; keep inputs small.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "roundtax/distributions.hpp"
#include "roundtax/money.hpp"
#include "roundtax/rounding.hpp"

namespace oracles {

// Expected per-transaction charge by walking every (basket size, ending
// tuple) outcome. Cost is up to 10^max_size tuples per basket size.
inline double brute_force_expected_tax(const roundtax::StoreProfile& profile,
                                       const roundtax::RoundingRule& rule) {
    double expected_agorot = 0.0;
    for (const auto& [size, q] : profile.baskets.masses()) {
        std::vector<int> digits(static_cast<std::size_t>(size), 0);
        while (true) {
            double p = 1.0;
            int total = 0;
            for (int d : digits) {
                p *= profile.endings.probability(d);
                total += d;
            }
            if (p != 0.0) {
                auto delta = roundtax::rounding_delta(roundtax::MinorUnits(total), rule);
                expected_agorot += q * p * static_cast<double>(delta.agorot());
            }
            std::size_t i = 0;
            while (i < digits.size() && ++digits[i] == 10) {
                digits[i] = 0;
                ++i;
            }
            if (i == digits.size()) break;
        }
    }
    return expected_agorot / 100.0;
}

// Random ending distribution with at most `max_nonzero` nonzero digits.
inline roundtax::EndingDistribution random_endings(std::mt19937& rng, int max_nonzero) {
    std::uniform_int_distribution<int> count_dist(1, max_nonzero);
    int count = count_dist(rng);
    std::vector<int> digits{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::shuffle(digits.begin(), digits.end(), rng);
    std::uniform_real_distribution<double> unit(0.01, 1.0);
    std::vector<double> weights(static_cast<std::size_t>(count));
    for (auto& w : weights) w = unit(rng);
    double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::array<double, 10> p{};
    for (int i = 0; i < count; ++i) {
        p[static_cast<std::size_t>(digits[static_cast<std::size_t>(i)])] =
            weights[static_cast<std::size_t>(i)] / total;
    }
    return roundtax::EndingDistribution(p);
}

// Random basket distribution with support inside [1, max_size].
inline roundtax::BasketSizeDistribution random_baskets(std::mt19937& rng, int max_size) {
    std::uniform_int_distribution<int> count_dist(1, max_size);
    int count = count_dist(rng);
    std::vector<int> sizes(static_cast<std::size_t>(max_size));
    std::iota(sizes.begin(), sizes.end(), 1);
    std::shuffle(sizes.begin(), sizes.end(), rng);
    std::uniform_real_distribution<double> unit(0.01, 1.0);
    std::vector<double> weights(static_cast<std::size_t>(count));
    for (auto& w : weights) w = unit(rng);
    double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<std::pair<int, double>> masses;
    for (int i = 0; i < count; ++i) {
        masses.emplace_back(sizes[static_cast<std::size_t>(i)],
                            weights[static_cast<std::size_t>(i)] / total);
    }
    return roundtax::BasketSizeDistribution(std::move(masses));
}

inline roundtax::StoreProfile random_small_profile(std::mt19937& rng,
                                                   int max_nonzero_digits = 3,
                                                   int max_basket_size = 4) {
    return roundtax::StoreProfile{
        "random",
        random_endings(rng, max_nonzero_digits),
        random_baskets(rng, max_basket_size),
        1.0,
        1000.0,
        0.0,
    };
}

inline double rel_gap(double actual, double expected) {
    return std::fabs(actual - expected) / std::fabs(expected);
}

}  // namespace oracles

#endif
