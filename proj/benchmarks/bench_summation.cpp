#include "asclt/weights.hpp"

#include <benchmark/benchmark.h>

using namespace asclt;

static void BM_DoubleSumFast(benchmark::State& state) {
    const auto s = WeightScheme::harmonic();
    for (auto _ : state) benchmark::DoNotOptimize(weighted_double_sum(s, 0.5, state.range(0), SumMode::Fast));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DoubleSumFast)->RangeMultiplier(4)->Range(1 << 8, 1 << 20)->Complexity(benchmark::oN);

static void BM_DoubleSumBrute(benchmark::State& state) {
    const auto s = WeightScheme::harmonic();
    for (auto _ : state) benchmark::DoNotOptimize(weighted_double_sum(s, 0.5, state.range(0), SumMode::BruteForce));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DoubleSumBrute)->RangeMultiplier(4)->Range(1 << 8, 1 << 12)->Complexity(benchmark::oNSquared);

static void BM_PrefixSums(benchmark::State& state) {
    const auto s = WeightScheme::power_log(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(prefix_sums(s, state.range(0)).at(state.range(0)));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PrefixSums)->Arg(1'000'000);

static void BM_Lemma5Grid(benchmark::State& state) {
    const auto s = WeightScheme::harmonic();
    const auto grid = decade_grid(10, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lemma5_ratio(s, 0.5, 0.9, grid, SumMode::Fast).sup_statistic);
}
BENCHMARK(BM_Lemma5Grid)->Arg(1'000'000);

BENCHMARK_MAIN();
