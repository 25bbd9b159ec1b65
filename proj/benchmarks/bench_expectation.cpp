#include <benchmark/benchmark.h>

#include <array>
#include <cstdint>

#include "roundtax/distributions.hpp"
#include "roundtax/expectation.hpp"
#include "roundtax/rounding.hpp"

namespace {

using namespace roundtax;

EndingDistribution skewed_endings() {
    // A realistic shape: most prices end in 0 or 9.
    return EndingDistribution(std::array<double, 10>{
        0.45, 0.02, 0.02, 0.02, 0.02, 0.05, 0.02, 0.02, 0.03, 0.35});
}

void BM_ConvolveEndings(benchmark::State& state) {
    auto endings = skewed_endings();
    std::int64_t n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(convolve_endings(endings, n));
    }
}
BENCHMARK(BM_ConvolveEndings)->Arg(1)->Arg(16)->Arg(256)->Arg(4096)->Arg(65536);

void BM_ExpectedTax(benchmark::State& state) {
    // Basket support of the given width, uniform over sizes 1..k.
    int width = static_cast<int>(state.range(0));
    std::vector<std::pair<int, double>> masses;
    for (int size = 1; size <= width; ++size) {
        masses.emplace_back(size, 1.0 / width);
    }
    StoreProfile profile{"bench", skewed_endings(),
                         BasketSizeDistribution(std::move(masses)), 1.0, 1000.0, 0.0};
    auto rule = RoundingRule::israel_2008();
    for (auto _ : state) {
        benchmark::DoNotOptimize(expected_tax_per_transaction(profile, rule));
    }
}
BENCHMARK(BM_ExpectedTax)->Arg(5)->Arg(20)->Arg(100);

}  // namespace
