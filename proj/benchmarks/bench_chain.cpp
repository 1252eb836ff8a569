#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "lsc/chain.hpp"

using namespace lsc;

static void BM_XxxMatvec(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    const auto h = chain::heisenberg_proxy(L, true);
    Eigen::VectorXcd x = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(h.dim()));
    x.normalize();
    Eigen::VectorXcd y(x.size());
    for (auto _ : state) {
        h.apply(x, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_XxxMatvec)->DenseRange(12, 20, 2)->Complexity();

static void BM_GenericBondMatvec(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    const auto fast = chain::heisenberg_proxy(L, true);
    const auto h = chain::assemble_chain(fast.bond, 2, L, true);
    Eigen::VectorXcd x = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(h.dim()));
    x.normalize();
    Eigen::VectorXcd y(x.size());
    for (auto _ : state) {
        h.apply(x, y);
        benchmark::DoNotOptimize(y.data());
    }
}
BENCHMARK(BM_GenericBondMatvec)->Arg(12)->Arg(16);
