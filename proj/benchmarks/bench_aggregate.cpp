#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "roundtax/aggregate.hpp"
#include "roundtax/distributions.hpp"

namespace {

using namespace roundtax;

std::vector<TaxedProfile> synthetic_stores(int count) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> tax_dist(0.001, 0.01);
    std::uniform_real_distribution<double> txns_dist(1000.0, 200000.0);
    std::uniform_real_distribution<double> weight_dist(0.1, 1.0);
    std::vector<double> weights(static_cast<std::size_t>(count));
    double total = 0.0;
    for (auto& w : weights) {
        w = weight_dist(rng);
        total += w;
    }
    std::vector<TaxedProfile> stores;
    stores.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        StoreProfile profile{"store_" + std::to_string(i),
                             EndingDistribution::point_mass(9),
                             BasketSizeDistribution::point_mass(1),
                             weights[static_cast<std::size_t>(i)] / total,
                             txns_dist(rng),
                             0.0};
        stores.push_back({std::move(profile), tax_dist(rng)});
    }
    return stores;
}

void BM_Extremize(benchmark::State& state) {
    auto stores = synthetic_stores(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            extremize_cash_shares(stores, 0.25, ExtremizeSense::kMaximize));
    }
}
BENCHMARK(BM_Extremize)->Arg(4)->Arg(64)->Arg(1024);

void BM_Aggregate(benchmark::State& state) {
    auto stores = synthetic_stores(static_cast<int>(state.range(0)));
    CashShareScenario scenario;
    scenario.label = "bench";
    for (const auto& s : stores) scenario.shares[s.profile.name] = 0.25;
    for (auto _ : state) {
        benchmark::DoNotOptimize(aggregate(stores, scenario));
    }
}
BENCHMARK(BM_Aggregate)->Arg(4)->Arg(64)->Arg(1024);

}  // namespace
