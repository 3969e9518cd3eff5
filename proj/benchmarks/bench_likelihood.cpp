#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "hawkes/likelihood.hpp"

namespace {

void BM_LogLikelihoodExact(benchmark::State& state) {
    const auto model = bench::demo_model();
    const auto seq = bench::demo_sequence(static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hawkes::log_likelihood_exact(model, seq));
    }
}
BENCHMARK(BM_LogLikelihoodExact)->Arg(100)->Arg(1000)->Arg(10000);

void BM_LogLikelihoodFacilitated(benchmark::State& state) {
    const auto model = bench::demo_model();
    const auto seq = bench::demo_sequence(static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hawkes::log_likelihood_facilitated(model, seq));
    }
}
BENCHMARK(BM_LogLikelihoodFacilitated)->Arg(100)->Arg(1000)->Arg(10000);

void BM_GradLogPosterior(benchmark::State& state) {
    const auto model = bench::demo_model();
    const auto seq = bench::demo_sequence(static_cast<double>(state.range(0)));
    const hawkes::PriorSpec priors;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hawkes::grad_log_posterior(model, priors, seq,
                                                            hawkes::LikelihoodMode::Facilitated));
    }
}
BENCHMARK(BM_GradLogPosterior)->Arg(100)->Arg(1000);

}  // namespace
