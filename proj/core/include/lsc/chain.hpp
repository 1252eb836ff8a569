#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace lsc::chain {

/// Truncated harmonic-oscillator representation of the negative-spin su(2)
/// generators on one site, occupation 0..n_max:
///   rho = (1 + (kappa delta / 4) Psi* Psi)^{1/2},
///   Sx  = (i /sqrt(kappa delta)) (Psi* rho + rho Psi),
///   Sy  = (1 /sqrt(kappa delta)) (rho Psi - Psi* rho),
///   Sz  = (-2/(kappa delta)) (1 + (kappa delta / 2) Psi* Psi),
/// with spin s = -2/(kappa delta). The commutation relations hold exactly
/// below the cutoff; the top Fock level carries the truncation defect.
struct BosonSiteRep {
    int n_max = 0;
    double kappa = 1.0;
    double delta = 2.0;
    double s = -1.0;
    Eigen::MatrixXd psi;        ///< annihilation
    Eigen::MatrixXd psi_dag;    ///< creation
    Eigen::MatrixXd rho;        ///< diagonal dressing factor
    Eigen::MatrixXcd sx, sy, sz;

    int dim() const { return n_max + 1; }
};

BosonSiteRep boson_spin_operators(double kappa, double delta, int n_max);

/// Eigen-decomposition of the two-site Casimir combination
///   M = 2 S_j . S_k + 2 s (s+1),
/// which defines the pair spin through J (J + 1) = M. M is real symmetric and
/// conserves total occupation; sectors with occupation <= n_max reproduce the
/// infinite-representation discrete series J = 2s - n exactly (for s = -1:
/// -2, -3, -4, ...). The quadratic has two roots; the negative branch
/// J = -1/2 - sqrt(M + 1/4) is fixed here (the symmetric combination
/// psi(-J) + psi(J+1) does not depend on the branch). Eigenvalues with
/// M + 1/4 < 0 cannot carry a real pair spin and are flagged as truncation
/// artifacts.
struct PairSpinDecomposition {
    int site_dim = 0;
    Eigen::MatrixXd vectors;        ///< orthonormal eigenvectors, columns
    Eigen::VectorXd m_values;       ///< eigenvalues of M
    Eigen::VectorXd j_values;       ///< negative-branch pair spin (artifacts: -1/2)
    std::vector<std::uint8_t> artifact;  ///< 1 where M + 1/4 < 0

    int artifact_count() const;
    /// J as an operator on the non-artifact subspace (artifacts contribute 0).
    Eigen::MatrixXd j_matrix() const;
};

PairSpinDecomposition two_site_j(const BosonSiteRep& rep);

/// Treatment of pair-spin sectors where the symmetric digamma bond form
/// psi(-J) + psi(J+1) - 2 psi(1) hits a digamma pole (J + 1 at a non-positive
/// integer -- every exactly-reproduced discrete-series sector does).
enum class PoleHandling {
    /// Evaluate the discrete-series branch 2 [psi(-J) - psi(2)], the
    /// principal-value regularization of the symmetric form shifted so the
    /// pair vacuum J = 2s = -2 carries zero energy. Pole-free for J <= -1/2
    /// and validated against the exact Bethe spectrum at L = 2, 3. Default.
    Regularize,
    /// Literal: evaluate the symmetric form where finite and project out
    /// pole-adjacent sectors (within 1e-6 of a pole). Note the projection
    /// removes every converged discrete-series sector, so the assembled
    /// chain vanishes on low-occupation states; kept for diagnostics.
    Project,
};

struct TwoSiteOperator {
    int site_dim = 0;
    Eigen::MatrixXd mat;   ///< (d^2 x d^2) real symmetric bond operator
    PoleHandling handling = PoleHandling::Regularize;
    int pole_sectors = 0;      ///< pole-adjacent eigenvalues encountered
    int artifact_sectors = 0;  ///< M + 1/4 < 0 eigenvalues (always projected)
};

/// Bond Hamiltonian of the s = -1 chain by functional calculus on the pair
/// spin: h(J) = psi(-J) + psi(J+1) - 2 psi(1), with poles handled as above.
TwoSiteOperator local_hamiltonian_s_minus1(const BosonSiteRep& rep,
                                           PoleHandling handling = PoleHandling::Regularize);
TwoSiteOperator local_hamiltonian_s_minus1(const PairSpinDecomposition& decomp,
                                           PoleHandling handling = PoleHandling::Regularize);

/// Nearest-neighbor chain H = sum_k h_{k,k+1} (+ wraparound when periodic)
/// over the L-fold tensor product, site 0 the most significant index. The
/// bond operator is stored once; apply() streams it over the chain without
/// materializing the full matrix. heisenberg_proxy chains use a bitwise fast
/// path.
struct ChainHamiltonian {
    enum class Kind { GenericBond, XxxProxy };

    int sites = 0;
    int local_dim = 0;
    bool periodic = false;
    Kind kind = Kind::GenericBond;
    Eigen::MatrixXd bond;  ///< (d^2 x d^2) local operator

    std::size_t dim() const;
    int bond_count() const { return periodic ? sites : sites - 1; }

    void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;
    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;

    /// Dense matrix; guarded to small dimensions (oracle / export use).
    Eigen::MatrixXd dense() const;
    /// Nonzero entries (row, col, value) of the full sparse matrix.
    std::vector<std::tuple<std::int64_t, std::int64_t, double>> triplets() const;
};

/// Antiferromagnetic spin-1/2 XXX chain H = sum_k (S_k . S_{k+1} - 1/4),
/// the desk-scale c = 1 proxy for quench dynamics.
ChainHamiltonian heisenberg_proxy(int L, bool periodic);

/// Chain from an arbitrary bond operator.
ChainHamiltonian assemble_chain(const TwoSiteOperator& local, int L, bool periodic);
ChainHamiltonian assemble_chain(const Eigen::MatrixXd& bond, int local_dim, int L,
                                bool periodic);

}  // namespace lsc::chain
