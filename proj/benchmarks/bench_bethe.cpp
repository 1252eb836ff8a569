#include <benchmark/benchmark.h>

#include "lsc/bethe.hpp"

using namespace lsc;

static void BM_BetheSolveDominant(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    const int N = L / 2;
    const auto params = bethe::ModelParams::holomorphic_qcd(L, N);
    const auto qn = bethe::dominant_state_quantum_numbers(L, N);
    for (auto _ : state) {
        auto st = bethe::solve_bethe(params, qn);
        benchmark::DoNotOptimize(st.residual_norm);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BetheSolveDominant)->RangeMultiplier(2)->Range(32, 512)->Complexity();

static void BM_TqResidual(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    const auto params = bethe::ModelParams::holomorphic_qcd(L, L / 2);
    const auto st = bethe::solve_bethe(params, bethe::dominant_state_quantum_numbers(L, L / 2));
    for (auto _ : state) benchmark::DoNotOptimize(bethe::tq_residual(st));
}
BENCHMARK(BM_TqResidual)->Arg(64)->Arg(256);
