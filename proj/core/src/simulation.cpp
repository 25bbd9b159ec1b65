#include "roundtax/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace roundtax {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer: bijective, passes the usual avalanche tests.
std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// Counter-based generator with one independent stream per transaction.
// Keying the stream on (seed, index) is what makes the simulation
// partition-invariant.
class TransactionRng {
public:
    TransactionRng(std::uint64_t seed, std::int64_t txn_index)
        : state_(mix64(seed + kGolden * (static_cast<std::uint64_t>(txn_index) + 1))) {}

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() {
        state_ += kGolden;
        return static_cast<double>(mix64(state_) >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Inverse-CDF sampling over a fixed table of (value, cumulative) pairs.
class CumulativeSampler {
public:
    explicit CumulativeSampler(const std::vector<std::pair<int, double>>& masses) {
        double acc = 0.0;
        for (const auto& [value, p] : masses) {
            if (p <= 0.0) continue;
            acc += p;
            values_.push_back(value);
            cumulative_.push_back(acc);
        }
        // Guard against the total falling a hair under 1: the last entry
        // absorbs all remaining tail mass.
        cumulative_.back() = 1.0;
    }

    int sample(double unit) const {
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), unit);
        if (it == cumulative_.end()) --it;
        return values_[static_cast<std::size_t>(it - cumulative_.begin())];
    }

private:
    std::vector<int> values_;
    std::vector<double> cumulative_;
};

}  // namespace

SimulationResult simulate(const StoreProfile& profile, const SimulationConfig& config) {
    if (config.n_transactions < 1) {
        throw std::domain_error("transaction count must be >= 1, got " +
                                std::to_string(config.n_transactions));
    }
    if (10 % config.rule.grid() != 0) {
        throw std::domain_error(
            "rounding grid must divide 10 to apply to ending digits, got " +
            std::to_string(config.rule.grid()));
    }

    CumulativeSampler basket_sampler(profile.baskets.masses());
    std::vector<std::pair<int, double>> digit_masses;
    for (int d = 0; d < 10; ++d) {
        digit_masses.emplace_back(d, profile.endings.probability(d));
    }
    CumulativeSampler digit_sampler(digit_masses);
    auto deltas = delta_by_residue(config.rule);

    SimulationResult result;
    result.n_transactions = config.n_transactions;
    if (config.record_transactions) {
        result.transactions.reserve(static_cast<std::size_t>(config.n_transactions));
    }

    // Deltas are integers in [-(grid-1), grid-1], so sums of squares stay
    // exact in int64 far beyond any realistic run length.
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;
    for (std::int64_t i = 0; i < config.n_transactions; ++i) {
        TransactionRng rng(config.seed, i);
        int basket_size = basket_sampler.sample(rng.next_unit());
        int residue = 0;
        for (int item = 0; item < basket_size; ++item) {
            residue = (residue + digit_sampler.sample(rng.next_unit())) % 10;
        }
        std::int64_t delta = deltas[residue % config.rule.grid()];
        sum += delta;
        sum_sq += delta * delta;
        if (config.record_transactions) {
            result.transactions.push_back(
                {i, basket_size, residue, static_cast<int>(delta)});
        }
    }

    double n = static_cast<double>(config.n_transactions);
    double mean_agorot = static_cast<double>(sum) / n;
    result.mean_tax = mean_agorot / 100.0;
    if (config.n_transactions > 1) {
        double variance = (static_cast<double>(sum_sq) -
                           static_cast<double>(sum) * static_cast<double>(sum) / n) /
                          (n - 1.0);
        result.std_error = std::sqrt(std::max(0.0, variance) / n) / 100.0;
    }
    return result;
}

}  // namespace roundtax
