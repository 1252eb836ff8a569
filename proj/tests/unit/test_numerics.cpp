#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lsc/errors.hpp"
#include "lsc/numerics.hpp"

using namespace lsc;

TEST_CASE("gauss-legendre rule integrates polynomials exactly") {
    const auto rule = num::gauss_legendre_01(12);
    // Exact for degree <= 2n-1; check moments int_0^1 x^k = 1/(k+1).
    for (int k = 0; k <= 20; ++k) {
        double s = 0.0;
        for (int i = 0; i < 12; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
        CHECK(std::abs(s - 1.0 / (k + 1)) < 1e-14);
    }
    double wsum = 0.0;
    for (double w : rule.weights) {
        CHECK(w > 0.0);
        wsum += w;
    }
    CHECK(std::abs(wsum - 1.0) < 1e-15);
    CHECK_THROWS_AS(num::gauss_legendre_01(0), DomainError);
}

TEST_CASE("digamma special values and identities") {
    CHECK(std::abs(num::digamma(1.0) + num::euler_gamma) < 1e-14);
    CHECK(std::abs(num::digamma(2.0) - (1.0 - num::euler_gamma)) < 1e-14);
    CHECK(std::abs(num::digamma(0.5) - (-num::euler_gamma - 2.0 * std::log(2.0))) < 1e-13);
    // Recurrence psi(x+1) = psi(x) + 1/x across scales.
    for (double x : {0.3, 1.7, 5.5, 11.25}) {
        CHECK(std::abs(num::digamma(x + 1.0) - num::digamma(x) - 1.0 / x) < 1e-13);
    }
    // Reflection psi(1-x) - psi(x) = pi cot(pi x).
    for (double x : {0.25, 0.4, -1.3}) {
        const double lhs = num::digamma(1.0 - x) - num::digamma(x);
        const double rhs = std::numbers::pi / std::tan(std::numbers::pi * x);
        CHECK(std::abs(lhs - rhs) < 1e-11);
    }
    CHECK_THROWS_AS(num::digamma(0.0), DomainError);
    CHECK_THROWS_AS(num::digamma(-3.0), DomainError);
}

TEST_CASE("pairwise summation") {
    std::vector<double> v(1000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / (i + 1.0);
    const double s = num::pairwise_sum(v);
    long double ref = 0.0L;
    for (double x : v) ref += x;
    CHECK(std::abs(s - static_cast<double>(ref)) < 1e-13);
    CHECK(num::pairwise_sum({}) == 0.0);
}
