#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "hawkes/intensity.hpp"

namespace {

void BM_IntensitiesAtEvents(benchmark::State& state) {
    const auto model = bench::demo_model();
    const auto seq = bench::demo_sequence(static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hawkes::intensities_at_events(model, seq));
    }
    state.SetItemsProcessed(static_cast<long>(state.iterations()) *
                            static_cast<long>(seq.size()));
}
BENCHMARK(BM_IntensitiesAtEvents)->Arg(100)->Arg(1000)->Arg(10000);

void BM_PointIntensity(benchmark::State& state) {
    const auto model = bench::demo_model();
    const auto seq = bench::demo_sequence(static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hawkes::intensity(model, seq, seq.horizon, 0));
    }
}
BENCHMARK(BM_PointIntensity)->Arg(100)->Arg(1000);

}  // namespace
