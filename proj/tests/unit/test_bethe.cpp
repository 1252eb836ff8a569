#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "lsc/bethe.hpp"
#include "lsc/errors.hpp"

using namespace lsc;
using bethe::ModelParams;
using bethe::QuantumNumbers;

namespace {

bethe::BetheState make_state(int L, int N, std::vector<double> qn, std::vector<double> roots) {
    bethe::BetheState st;
    st.params = ModelParams::holomorphic_qcd(L, N);
    st.qn.n = std::move(qn);
    st.roots = std::move(roots);
    st.converged = true;
    return st;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Multiplicative Bethe equation residual |LHS/RHS - 1| per root -- the
// complex-form oracle, independent of the logarithmic branch bookkeeping.
double multiplicative_residual(const bethe::BetheState& st) {
    using cplx = std::complex<double>;
    const cplx I(0.0, 1.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < st.roots.size(); ++k) {
        const double lk = st.roots[k];
        cplx lhs = std::pow((cplx(lk, 0.0) - I) / (cplx(lk, 0.0) + I), st.params.L);
        cplx rhs(1.0, 0.0);
        for (std::size_t j = 0; j < st.roots.size(); ++j) {
            if (j == k) continue;
            rhs *= (cplx(lk - st.roots[j], 0.0) + I) / (cplx(lk - st.roots[j], 0.0) - I);
        }
        worst = std::max(worst, std::abs(lhs / rhs - 1.0));
    }
    return worst;
}

// All strictly-ascending N-subsets of the vacancy lattice.
void enumerate_configs(const std::vector<double>& lattice, int N,
                       std::vector<std::vector<double>>& out) {
    std::vector<int> idx(N);
    for (int i = 0; i < N; ++i) idx[i] = i;
    const int M = static_cast<int>(lattice.size());
    while (true) {
        std::vector<double> cfg(N);
        for (int i = 0; i < N; ++i) cfg[i] = lattice[idx[i]];
        out.push_back(std::move(cfg));
        int pos = N - 1;
        while (pos >= 0 && idx[pos] == M - N + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < N; ++i) idx[i] = idx[i - 1] + 1;
    }
}

}  // namespace

TEST_CASE("closed-form single root") {
    CHECK(bethe::closed_form_single_root(4, 1) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(bethe::closed_form_single_root(2, 1)) < 1e-14);
    CHECK(std::abs(bethe::closed_form_single_root(4, 2)) < 1e-14);
    CHECK_THROWS_AS(bethe::closed_form_single_root(4, 0), DomainError);
    CHECK_THROWS_AS(bethe::closed_form_single_root(4, 8), DomainError);
    // Oracle: ((l - i)/(l + i))^L = 1 on every branch, all L <= 12.
    using cplx = std::complex<double>;
    const cplx I(0.0, 1.0);
    for (int L = 2; L <= 12; ++L) {
        for (int n = 1; n < L; ++n) {
            const double l = bethe::closed_form_single_root(L, n);
            const cplx w = std::pow((cplx(l, 0.0) - I) / (cplx(l, 0.0) + I), L);
            CHECK(std::abs(w - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("logarithmic residual") {
    SUBCASE("empty system") {
        auto st = make_state(4, 0, {}, {});
        CHECK(bethe::log_bethe_residual(st).empty());
    }
    SUBCASE("closed-form root solves the equation") {
        // Branch n = 1 at L = 4 is quantum number n - L/2 = -1.
        auto st = make_state(4, 1, {-1.0}, {-1.0});
        CHECK(max_abs(bethe::log_bethe_residual(st)) < 1e-14);
    }
    SUBCASE("perturbed root does not") {
        auto st = make_state(4, 1, {-1.0}, {-1.1});
        CHECK(max_abs(bethe::log_bethe_residual(st)) > 1e-2);
    }
    SUBCASE("errors") {
        auto st = make_state(4, 2, {-0.5, 0.5}, {0.3, 0.3});
        CHECK_THROWS_AS(bethe::log_bethe_residual(st), DomainError);
        auto st2 = make_state(4, 1, {-1.0}, {std::nan("")});
        CHECK_THROWS_AS(bethe::log_bethe_residual(st2), DomainError);
    }
}

TEST_CASE("quantum number validation") {
    QuantumNumbers qn;
    qn.n = {-0.5, 0.5};
    CHECK_NOTHROW(qn.validate(6, 2));  // L-N-1 = 3 odd: half-integers
    QuantumNumbers bad;
    bad.n = {-1.0, 1.0};
    CHECK_THROWS_AS(bad.validate(6, 2), DomainError);  // wrong parity
    QuantumNumbers dup;
    dup.n = {0.5, 0.5};
    CHECK_THROWS_AS(dup.validate(6, 2), DomainError);  // Pauli principle
}

TEST_CASE("solve_bethe basics") {
    SUBCASE("N = 0") {
        auto st = bethe::solve_bethe(ModelParams::holomorphic_qcd(16, 0), QuantumNumbers{});
        CHECK(st.converged);
        CHECK(st.roots.empty());
        CHECK(bethe::energy(st) == 0.0);
    }
    SUBCASE("single root vs closed form at L = 4") {
        QuantumNumbers qn;
        qn.n = {-1.0};
        auto st = bethe::solve_bethe(ModelParams::holomorphic_qcd(4, 1), qn);
        CHECK(std::abs(st.roots[0] + 1.0) < 1e-13);
        CHECK(std::abs(bethe::energy(st) - 1.0) < 1e-13);
    }
    SUBCASE("two symmetric roots at L = 6") {
        QuantumNumbers qn;
        qn.n = {-0.5, 0.5};
        auto st = bethe::solve_bethe(ModelParams::holomorphic_qcd(6, 2), qn);
        CHECK(std::abs(st.roots[0] + st.roots[1]) < 1e-10);
        CHECK(multiplicative_residual(st) < 1e-10);
    }
    SUBCASE("oracle equivalence: N = 1, all branches, L <= 12") {
        for (int L = 2; L <= 12; ++L) {
            for (int n = 1; n < L; ++n) {
                const double target = bethe::closed_form_single_root(L, n);
                QuantumNumbers qn;
                qn.n = {n - L / 2.0};
                auto st = bethe::solve_bethe(ModelParams::holomorphic_qcd(L, 1), qn);
                CHECK(std::abs(st.roots[0] - target) < 1e-12);
            }
        }
    }
}

TEST_CASE("energy of explicit root sets") {
    auto st = make_state(2, 1, {0.0}, {0.0});
    CHECK(bethe::energy(st) == doctest::Approx(2.0).epsilon(1e-15));
    auto un = make_state(4, 1, {-1.0}, {-1.0});
    un.converged = false;
    CHECK_THROWS_AS(bethe::energy(un), DomainError);
}

TEST_CASE("T-Q polynomiality residual") {
    SUBCASE("N = 0 is trivially polynomial") {
        auto st = make_state(4, 0, {}, {});
        CHECK(bethe::tq_residual(st) == 0.0);
    }
    SUBCASE("converged states pass, perturbed fail") {
        QuantumNumbers qn;
        qn.n = {-1.0};
        auto st = bethe::solve_bethe(ModelParams::holomorphic_qcd(4, 1), qn);
        CHECK(bethe::tq_residual(st) < 1e-8);
        auto bad = st;
        bad.roots[0] += 0.1;
        CHECK(bethe::tq_residual(bad) > 1e-3);
    }
    SUBCASE("large L stays finite in the log domain") {
        auto qn = bethe::dominant_state_quantum_numbers(256, 64);
        auto st = bethe::solve_bethe(ModelParams::holomorphic_qcd(256, 64), qn);
        CHECK(bethe::tq_residual(st) < 1e-8);
    }
}

TEST_CASE("vacancy lattice and configurations") {
    // L + N - 2 vacancies, symmetric, correct parity.
    auto v = bethe::vacancy_lattice(6, 2);
    REQUIRE(v.size() == 6);
    CHECK(v.front() == doctest::Approx(-2.5));
    CHECK(v.back() == doctest::Approx(2.5));
    auto gs = bethe::ground_state_quantum_numbers(6, 2);
    CHECK(gs.n == std::vector<double>{-2.5, 2.5});
    auto dom = bethe::dominant_state_quantum_numbers(6, 2);
    CHECK(dom.n == std::vector<double>{-0.5, 0.5});
    CHECK(bethe::ground_state_quantum_numbers(6, 0).n.empty());
    // The window grows with N, so overfilling needs L = 1 (zero vacancies).
    CHECK_THROWS_AS(bethe::ground_state_quantum_numbers(1, 1), DomainError);
}

TEST_CASE("ground and dominant configurations against brute force") {
    // Enumerate every quantum-number configuration and compare the extremal
    // energies with the closed-form selection rules.
    for (int L : {4, 6, 8}) {
        for (int N : {1, 2, 3}) {
            const auto lattice = bethe::vacancy_lattice(L, N);
            std::vector<std::vector<double>> configs;
            enumerate_configs(lattice, N, configs);
            double e_min = 1e300, e_max = -1e300;
            for (const auto& cfg : configs) {
                QuantumNumbers qn;
                qn.n = cfg;
                auto st = bethe::solve_bethe(ModelParams::holomorphic_qcd(L, N), qn);
                const double e = bethe::energy(st);
                e_min = std::min(e_min, e);
                e_max = std::max(e_max, e);
                CHECK(bethe::tq_residual(st) < 1e-8);
            }
            auto gs = bethe::solve_bethe(ModelParams::holomorphic_qcd(L, N),
                                         bethe::ground_state_quantum_numbers(L, N));
            CHECK(bethe::energy(gs) == doctest::Approx(e_min).epsilon(1e-9));
            auto dom = bethe::solve_bethe(ModelParams::holomorphic_qcd(L, N),
                                          bethe::dominant_state_quantum_numbers(L, N));
            CHECK(bethe::energy(dom) == doctest::Approx(e_max).epsilon(1e-9));
        }
    }
}

TEST_CASE("root properties") {
    SUBCASE("parity: symmetric quantum numbers give symmetric roots") {
        auto qn = bethe::dominant_state_quantum_numbers(8, 4);
        REQUIRE(qn.symmetric_under_negation());
        auto st = bethe::solve_bethe(ModelParams::holomorphic_qcd(8, 4), qn);
        auto sorted = st.roots;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            CHECK(std::abs(sorted[i] + sorted[sorted.size() - 1 - i]) < 1e-10);
    }
    SUBCASE("reality: complex-form residual vanishes at the real solution") {
        for (int N : {2, 3, 4}) {
            auto qn = bethe::ground_state_quantum_numbers(10, N);
            auto st = bethe::solve_bethe(ModelParams::holomorphic_qcd(10, N), qn);
            CHECK(multiplicative_residual(st) < 1e-10);
        }
    }
    SUBCASE("permutation invariance of the energy") {
        auto qn = bethe::dominant_state_quantum_numbers(8, 3);
        auto st = bethe::solve_bethe(ModelParams::holomorphic_qcd(8, 3), qn);
        auto shuffled = st;
        std::rotate(shuffled.roots.begin(), shuffled.roots.begin() + 1, shuffled.roots.end());
        CHECK(bethe::energy(st) == doctest::Approx(bethe::energy(shuffled)).epsilon(1e-15));
    }
}

TEST_CASE("lattice NLS parameterization") {
    // s = -2/(kappa delta) enforced; the QCD preset is the (1, 2) point.
    auto p = ModelParams::lattice_nls(8, 2, 1.0, 2.0);
    CHECK(p.s == doctest::Approx(-1.0));
    auto bad = p;
    bad.s = -0.5;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    // A different (kappa, delta) still solves and keeps roots real.
    auto p2 = ModelParams::lattice_nls(8, 2, 0.5, 2.0);  // s = -2
    auto qn = bethe::dominant_state_quantum_numbers(8, 2);
    auto st = bethe::solve_bethe(p2, qn);
    CHECK(st.converged);
    CHECK(st.residual_norm < 1e-12);
}
