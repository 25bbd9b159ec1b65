#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "roundtax/money.hpp"
#include "roundtax/rounding.hpp"

namespace {

using namespace roundtax;

std::vector<MinorUnits> random_amounts(std::size_t count) {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::int64_t> dist(0, 10000000);
    std::vector<MinorUnits> amounts;
    amounts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) amounts.emplace_back(dist(rng));
    return amounts;
}

void BM_RoundAmount(benchmark::State& state) {
    auto rule = RoundingRule::israel_2008();
    auto amounts = random_amounts(4096);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(round_amount(amounts[i], rule));
        i = (i + 1) % amounts.size();
    }
}
BENCHMARK(BM_RoundAmount);

void BM_RoundingDelta(benchmark::State& state) {
    auto rule = RoundingRule::israel_2008();
    auto amounts = random_amounts(4096);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rounding_delta(amounts[i], rule));
        i = (i + 1) % amounts.size();
    }
}
BENCHMARK(BM_RoundingDelta);

void BM_ParseRule(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            RoundingRule::parse("grid=10; down=1,2,3,4; up=5,6,7,8,9"));
    }
}
BENCHMARK(BM_ParseRule);

}  // namespace
