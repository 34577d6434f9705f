#include <benchmark/benchmark.h>

#include "subseries/classify.hpp"
#include "subseries/constructions.hpp"

using namespace subseries;

static void BM_Classify(benchmark::State& state) {
    const auto ah = alternating_harmonic();
    DiagnosticsConfig cfg;
    cfg.horizon = state.range(0);
    for (auto _ : state) {
        auto v = classify(ah, omega(), cfg);
        benchmark::DoNotOptimize(v.kind);
    }
}
BENCHMARK(BM_Classify)->Arg(1 << 12)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_ClassifyWithConditionality(benchmark::State& state) {
    const auto ah = alternating_harmonic();
    DiagnosticsConfig cfg;
    cfg.horizon = state.range(0);
    for (auto _ : state) {
        auto v = classify_with_conditionality(ah, omega(), cfg);
        benchmark::DoNotOptimize(v.second);
    }
}
BENCHMARK(BM_ClassifyWithConditionality)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_DBoundPartition(benchmark::State& state) {
    const auto ah = alternating_harmonic();
    for (auto _ : state) {
        auto ip = d_bound_partition_covering(ah, state.range(0), 4096);
        benchmark::DoNotOptimize(ip.block_count());
    }
}
BENCHMARK(BM_DBoundPartition)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
