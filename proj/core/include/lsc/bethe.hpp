#pragma once

#include <optional>
#include <vector>

namespace lsc::bethe {

/// Chain parameters. The lattice nonlinear-Schrodinger parameterization ties
/// the spin to the coupling and lattice step through s = -2/(kappa*delta);
/// the holomorphic-QCD chain is the special point s = -1, kappa = 1, delta = 2.
struct ModelParams {
    int L = 0;             ///< chain length (sites)
    int N = 0;             ///< number of Bethe roots
    double s = -1.0;       ///< spin, negative
    double kappa = 1.0;    ///< NLS coupling > 0
    double delta = 2.0;    ///< lattice step > 0

    static ModelParams holomorphic_qcd(int L, int N);
    static ModelParams lattice_nls(int L, int N, double kappa, double delta);
    void validate() const;
};

/// Quantum numbers n_k of the logarithmic Bethe equations, ascending and
/// pairwise distinct (Pauli principle). They are integers when (L - N - 1)
/// is even and half-odd-integers otherwise; validate() enforces both.
struct QuantumNumbers {
    std::vector<double> n;

    static bool integers_required(int L, int N);
    void validate(int L, int N) const;
    bool symmetric_under_negation() const;
};

struct BetheState {
    ModelParams params;
    QuantumNumbers qn;
    std::vector<double> roots;    ///< real rapidities, same order as qn.n
    double residual_norm = 0.0;   ///< max-norm of the counting-function residual
    int iterations = 0;
    bool converged = false;
};

struct SolveOptions {
    double tol = 1e-12;   ///< max-norm tolerance in the counting-function metric
    int max_iter = 200;
};

/// Counting-function residual of the logarithmic Bethe equations,
///
///   F_k = 2 L atan(lambda_k / |s|) + 2 sum_{j != k} atan(lambda_k - lambda_j)
///         - 2 pi n_k ,
///
/// one entry per root. The principal branch of atan fixes the logarithm of
/// the multiplicative equation ((lambda-i)/(lambda+i))^L = prod (...) once and
/// for all; with this branch the N = 1 solution on branch m in {1,...,L-1} is
/// lambda = -cot(pi m / L), i.e. n = m - L/2. Zero iff the roots solve the
/// Bethe equations with the given quantum numbers.
std::vector<double> log_bethe_residual(const BetheState& state);

/// N = 1 closed form: the unique real solution of ((lambda-i)/(lambda+i))^L = 1
/// on branch n, lambda = -cot(pi n / L). Requires 0 < n mod L; n = 0 (mod L)
/// is the root at infinity and is rejected.
double closed_form_single_root(int L, int n);

/// Damped Newton solve of the logarithmic Bethe equations. Deterministic for
/// fixed inputs; the default initial guess decouples the roots,
/// lambda_k = |s| tan(pi n_k / (L + N - 1)), which is exact for N = 1.
BetheState solve_bethe(const ModelParams& params, const QuantumNumbers& qn,
                       const std::optional<std::vector<double>>& guess = std::nullopt,
                       const SolveOptions& opts = {});

/// Chain energy E = sum_j 2 / (lambda_j^2 + 1); nonnegative for real roots.
double energy(const BetheState& state);

/// Grand-canonical energy E - h N.
double grand_energy(const BetheState& state, double h);

/// Validates a state against the T-Q relation: the transfer-matrix eigenvalue
///   T(l) = (l-i)^L Q(l-i)/Q(l) + (l+i)^L Q(l+i)/Q(l),  Q(l) = prod (l - l_k),
/// is a polynomial iff the pole at each root cancels. Returns the maximum over
/// roots of the scaled residue |t1 + t2| / (|t1| + |t2|), evaluated in the log
/// domain so large L does not overflow. ~0 iff the roots solve the Bethe
/// equations; an independent check of solve_bethe.
double tq_residual(const BetheState& state);

/// Vacancy lattice of the counting function: L + N - 2 consecutive values
/// centered on zero, automatically integer or half-integer per the parity
/// rule. Quantum numbers outside this window correspond to roots at infinity.
std::vector<double> vacancy_lattice(int L, int N);

/// Ground-state quantum-number configuration: fill the vacancy lattice from
/// its outer edges inward (two symmetric blocks of consecutive quantum
/// numbers at the outer edges; outer slots carry rapidities of largest
/// magnitude and hence the least energy); for odd N the unpaired root sits at
/// the positive edge. Validated against brute-force enumeration in the test
/// suite.
QuantumNumbers ground_state_quantum_numbers(int L, int N);

/// Dominant-state configuration: the centered consecutive block, which
/// MAXIMIZES the energy at fixed N and realizes the condensed Fermi sphere
/// (interior rapidity sea) whose excitations carry the c = 1 conformal
/// structure. The centered block is parity-symmetric for every N, so the sea
/// carries no momentum. Validated against brute-force enumeration.
QuantumNumbers dominant_state_quantum_numbers(int L, int N);

}  // namespace lsc::bethe
