#include <benchmark/benchmark.h>

#include "bench_common.hpp"

namespace {

void BM_SimulateThinning(benchmark::State& state) {
    const auto model = bench::demo_model();
    hawkes::SimulationConfig cfg;
    cfg.horizon = static_cast<double>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        cfg.seed = seed++;
        benchmark::DoNotOptimize(hawkes::simulate_thinning(model, cfg));
    }
}
BENCHMARK(BM_SimulateThinning)->Arg(300)->Arg(3000);

void BM_SimulateBranching(benchmark::State& state) {
    const auto model = bench::demo_model();
    hawkes::SimulationConfig cfg;
    cfg.horizon = static_cast<double>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        cfg.seed = seed++;
        benchmark::DoNotOptimize(hawkes::simulate_branching(model, cfg));
    }
}
BENCHMARK(BM_SimulateBranching)->Arg(300)->Arg(3000);

}  // namespace
