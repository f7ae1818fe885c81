#include <benchmark/benchmark.h>

#include <cmath>

#include "lcb/capacity.hpp"
#include "lcb/distributions.hpp"
#include "lcb/grid_density.hpp"
#include "lcb/numerics.hpp"
#include "lcb/rate_distortion.hpp"

namespace {

void BM_GridEntropy(benchmark::State& state) {
    const auto grid = lcb::default_grid(lcb::DistributionSpec::gaussian(1.0),
                                        static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(lcb::entropy_of_grid(grid));
}
BENCHMARK(BM_GridEntropy)->Arg(1024)->Arg(4096)->Arg(16384);

void BM_Convolve(benchmark::State& state) {
    const auto f = lcb::DistributionSpec::gaussian(1.0).to_grid(
        static_cast<int>(state.range(0)), 10.0);
    for (auto _ : state) benchmark::DoNotOptimize(lcb::convolve(f, f));
}
BENCHMARK(BM_Convolve)->Arg(1024)->Arg(4096);

void BM_Quadrature(benchmark::State& state) {
    const auto spec = lcb::DistributionSpec::extended_cauchy(-0.2);
    for (auto _ : state) benchmark::DoNotOptimize(spec.entropy());
}
BENCHMARK(BM_Quadrature);

void BM_RdSolver(benchmark::State& state) {
    const auto grid = lcb::default_grid(lcb::DistributionSpec::gaussian(1.0),
                                        static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(lcb::blahut_arimoto_rd(grid, 2.0, {0.25}));
}
BENCHMARK(BM_RdSolver)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_CapacitySolver(benchmark::State& state) {
    const auto grid = lcb::default_grid(lcb::DistributionSpec::laplace(1.0 / std::sqrt(2.0)),
                                        static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            lcb::blahut_arimoto_capacity(grid, 1.0, 6.0 * std::sqrt(2.0)));
}
BENCHMARK(BM_CapacitySolver)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
