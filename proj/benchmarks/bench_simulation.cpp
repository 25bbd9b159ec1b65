#include <benchmark/benchmark.h>

#include <string>

#include "roundtax/distributions.hpp"
#include "roundtax/simulation.hpp"

namespace {

using namespace roundtax;

const StoreProfile& supermarket_profile() {
    static const StoreProfile profile = [] {
        auto profiles =
            load_store_profiles(std::string(ROUNDTAX_DATA_DIR) + "/israel2013");
        for (auto& p : profiles) {
            if (p.name == "supermarkets_drugstores") return p;
        }
        return profiles.front();
    }();
    return profile;
}

void BM_Simulate(benchmark::State& state) {
    SimulationConfig config;
    config.n_transactions = state.range(0);
    config.seed = 42;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(supermarket_profile(), config));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(1000)->Arg(10000)->Arg(100000);

}  // namespace
