#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lsc::num {

/// Deterministic pairwise (cascade) summation. Order is fixed by the input
/// ordering, independent of threading, and the error grows like log(n).
double pairwise_sum(std::span<const double> values);

/// Gauss-Legendre rule with n points on (0,1). Nodes ascending, weights > 0.
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};
Quadrature gauss_legendre_01(int n);

/// Digamma function psi(x) = d ln Gamma(x) / dx for real non-pole arguments.
/// Uses downward recurrence plus the asymptotic series for x >= 8 and the
/// reflection formula for x < 0. Relative accuracy ~1e-14 away from poles.
double digamma(double x);

/// Euler-Mascheroni constant; psi(1) = -euler_gamma.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

}  // namespace lsc::num
