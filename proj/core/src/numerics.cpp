#include "lsc/numerics.hpp"

#include <cmath>
#include <numbers>

#include "lsc/errors.hpp"

namespace lsc::num {

double pairwise_sum(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

Quadrature gauss_legendre_01(int n) {
    if (n < 1) throw DomainError("gauss_legendre_01: need n >= 1");
    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    // Newton iteration on P_n(x) over (-1,1), Tricomi initial guess.
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Map from (-1,1) to (0,1); store ascending in the 0..1 coordinate.
        q.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        q.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * pp * pp);
    }
    return q;
}

namespace {

// Asymptotic expansion of psi for large positive x (Bernoulli coefficients).
double digamma_asymptotic(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // B_2/2 x^-2, B_4/4 x^-4, ...
    const double series = inv2 * (1.0 / 12.0 -
                          inv2 * (1.0 / 120.0 -
                          inv2 * (1.0 / 252.0 -
                          inv2 * (1.0 / 240.0 -
                          inv2 * (1.0 / 132.0 -
                          inv2 * (691.0 / 32760.0 -
                          inv2 * (1.0 / 12.0)))))));
    return std::log(x) - 0.5 * inv - series;
}

}  // namespace

double digamma(double x) {
    if (!std::isfinite(x)) throw DomainError("digamma: non-finite argument");
    if (x <= 0.0 && x == std::floor(x))
        throw DomainError("digamma: pole at non-positive integer argument");
    if (x < 0.0) {
        // psi(x) = psi(1-x) - pi cot(pi x)
        return digamma(1.0 - x) - std::numbers::pi / std::tan(std::numbers::pi * x);
    }
    double acc = 0.0;
    while (x < 8.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    return acc + digamma_asymptotic(x);
}

}  // namespace lsc::num
