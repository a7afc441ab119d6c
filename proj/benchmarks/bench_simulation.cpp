#include "asclt/averaging.hpp"
#include "asclt/functions.hpp"
#include "asclt/models.hpp"
#include "asclt/rng.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace asclt;

static void BM_PathStream(benchmark::State& state) {
    const auto m = SequenceModel::parse(state.range(0) == 0 ? "normal" : "rademacher");
    PathStream stream(m, 1);
    for (auto _ : state) benchmark::DoNotOptimize(stream.next());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PathStream)->Arg(0)->Arg(1);

static void BM_Accumulator(benchmark::State& state) {
    LogAverageAccumulator acc;
    double x = 0.25;
    for (auto _ : state) {
        acc.add(1.0 / static_cast<double>(acc.next_k()), x);
        x = -x;
    }
    benchmark::DoNotOptimize(acc.average());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Accumulator);

static void BM_RunExperiment(benchmark::State& state) {
    const auto m = SequenceModel::parse("normal");
    const auto h = WeightScheme::harmonic();
    const auto f = LipschitzFunction::arctan();
    const std::vector<std::int64_t> cps = {1000, 10'000, 100'000};
    const std::vector<std::uint64_t> seeds = {1, 2, 3, 4};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            run_experiment(m, h, f, 100'000, cps, seeds, static_cast<unsigned>(state.range(0))).median_abs_error);
    }
    state.SetItemsProcessed(state.iterations() * 400'000);
}
BENCHMARK(BM_RunExperiment)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
