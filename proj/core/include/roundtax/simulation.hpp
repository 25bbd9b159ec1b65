#ifndef ROUNDTAX_SIMULATION_HPP
#define ROUNDTAX_SIMULATION_HPP

#include <cstdint>
#include <vector>

#include "roundtax/distributions.hpp"
#include "roundtax/rounding.hpp"

namespace roundtax {

struct SimulationConfig {
    std::int64_t n_transactions = 10000;
    std::uint64_t seed = 0;
    RoundingRule rule = RoundingRule::israel_2008();
    bool record_transactions = false;
};

struct TransactionRecord {
    std::int64_t index = 0;
    int basket_size = 0;
    int residue = 0;       // total mod 10, before rounding
    int delta_agorot = 0;  // charged minus exact
};

struct SimulationResult {
    double mean_tax = 0.0;   // NIS per transaction
    double std_error = 0.0;  // NIS, standard error of the mean
    std::int64_t n_transactions = 0;
    std::vector<TransactionRecord> transactions;  // only when recording
};

// Monte Carlo estimate of the per-transaction rounding charge: draw a
// basket size, then that many iid ending digits, round the total. The
// same (seed, transaction index) always yields the same draw, so results
// do not depend on how the workload is split: the first k transactions of
// any run equal a run of k.
SimulationResult simulate(const StoreProfile& profile, const SimulationConfig& config);

}  // namespace roundtax

#endif
