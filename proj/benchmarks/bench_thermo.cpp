#include <benchmark/benchmark.h>

#include "lsc/thermo.hpp"

using namespace lsc;

static void BM_DensitySolve(benchmark::State& state) {
    const int res = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto d = thermo::solve_density(1.0, res);
        benchmark::DoNotOptimize(d.n_density);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DensitySolve)->RangeMultiplier(2)->Range(64, 512)->Complexity();

static void BM_FermiPoint(benchmark::State& state) {
    thermo::FermiOptions fo;
    fo.resolution = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(thermo::find_fermi_point(0.5, fo));
}
BENCHMARK(BM_FermiPoint)->Arg(128)->Arg(256);
