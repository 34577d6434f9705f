#include <benchmark/benchmark.h>

#include "subseries/series.hpp"
#include "subseries/summation.hpp"

using namespace subseries;

static void BM_PartialSumTree(benchmark::State& state) {
    const auto ah = alternating_harmonic();
    const auto x = evens();
    const index_t k = state.range(0);
    for (auto _ : state) {
        Rational s = partial_sum(ah, x, k);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_PartialSumTree)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

static void BM_PartialSumSerial(benchmark::State& state) {
    const auto ah = alternating_harmonic();
    const auto x = evens();
    const index_t k = state.range(0);
    for (auto _ : state) {
        Rational s;
        for (index_t i = 0; i < k; ++i)
            if (x.contains(i)) s += ah.term(i);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_PartialSumSerial)->Arg(1 << 12)->Arg(1 << 16);

static void BM_RangeSum3(benchmark::State& state) {
    const auto ah = alternating_harmonic();
    const index_t k = state.range(0);
    for (auto _ : state) {
        TriSum s = range_sum3(ah, nullptr, 0, k);
        benchmark::DoNotOptimize(s.all);
    }
}
BENCHMARK(BM_RangeSum3)->Arg(1 << 12)->Arg(1 << 16);

BENCHMARK_MAIN();
