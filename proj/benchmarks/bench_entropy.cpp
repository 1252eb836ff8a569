#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "lsc/quench.hpp"

using namespace lsc;

namespace {
quench::StateVector test_state(int sites) {
    quench::StateVector psi;
    psi.sites = sites;
    psi.local_dim = 2;
    const Eigen::Index dim = Eigen::Index(1) << sites;
    psi.amps.resize(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        psi.amps[i] = std::complex<double>(std::sin(0.37 * (i + 1.0)), std::cos(1.13 * i));
    psi.normalize();
    return psi;
}
}  // namespace

static void BM_EntanglementEntropy(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    const auto psi = test_state(L);
    for (auto _ : state)
        benchmark::DoNotOptimize(quench::entanglement_entropy(psi, L / 2));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EntanglementEntropy)->DenseRange(12, 20, 2)->Complexity();

static void BM_KrylovStep(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    const auto h = chain::heisenberg_proxy(L, true);
    const auto psi = test_state(L);
    for (auto _ : state) {
        auto out = quench::evolve(h, psi, {0.25});
        benchmark::DoNotOptimize(out[0].amps.data());
    }
}
BENCHMARK(BM_KrylovStep)->Arg(14)->Arg(18);
