#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "lsc/chain.hpp"

namespace lsc::quench {

/// Normalized many-body state over the tensor-product basis (site 0 most
/// significant index).
struct StateVector {
    int sites = 0;
    int local_dim = 2;
    Eigen::VectorXcd amps;

    double norm() const { return amps.norm(); }
    void normalize();
};

struct GroundStateOptions {
    double tol = 1e-10;      ///< on ||H psi - E psi||
    int krylov_dim = 40;
    int max_restarts = 400;
};

struct GroundState {
    StateVector state;
    double energy = 0.0;
    double residual = 0.0;
    int restarts = 0;
};

/// Lowest eigenpair by restarted Lanczos with full reorthogonalization.
/// Deterministic: the start vector is the basis state with the smallest
/// diagonal entry (ties to the smallest index), and a degenerate ground space
/// is canonicalized by making the largest-magnitude amplitude real positive.
GroundState ground_state(const chain::ChainHamiltonian& h, const GroundStateOptions& opts = {});

/// Tensor product of the two half-chain ground states -- the pre-quench
/// state of the join protocol; left block occupies the most significant index.
StateVector joined_initial_state(const chain::ChainHamiltonian& h_left,
                                 const chain::ChainHamiltonian& h_right,
                                 const GroundStateOptions& opts = {});

struct EvolveOptions {
    int krylov_dim = 24;
    double step_tol = 1e-10;  ///< per-step Krylov truncation error target
    double max_step = 0.5;
};

/// psi(t_k) = exp(-i H t_k) psi for an ascending time grid, by Lanczos
/// (Krylov) propagation with adaptive substeps; unitary up to the step
/// tolerance, norm drift ~1e-12 per step.
std::vector<StateVector> evolve(const chain::ChainHamiltonian& h, const StateVector& psi,
                                const std::vector<double>& times,
                                const EvolveOptions& opts = {});

/// Squared Schmidt coefficients across the bond after `cut` sites,
/// descending. Computed from the Gram matrix of the smaller side.
std::vector<double> schmidt_spectrum(const StateVector& psi, int cut);

/// Von Neumann entanglement entropy (nats) across the cut:
/// S = -sum p ln p over the Schmidt spectrum.
double entanglement_entropy(const StateVector& psi, int cut);

/// Pure-state mutual information I(A;B) = 2 S_A across the cut.
double mutual_information(const StateVector& psi, int cut);

/// Heisenberg evolution of operators on one chain, O(t) = e^{iHt} O e^{-iHt},
/// via a cached dense eigendecomposition (chain dimension is limited
/// accordingly). The local-projector constructor places 1/2 - S^z on a site.
class OperatorEvolver {
  public:
    OperatorEvolver(const chain::ChainHamiltonian& h, const Eigen::MatrixXcd& op);
    Eigen::MatrixXcd at_time(double t) const;
    int dimension() const { return static_cast<int>(eigvals_.size()); }

  private:
    Eigen::MatrixXd eigvecs_;
    Eigen::VectorXd eigvals_;
    Eigen::MatrixXcd op_eigbasis_;
};

/// One-shot convenience wrapper around OperatorEvolver.
Eigen::MatrixXcd evolve_operator(const chain::ChainHamiltonian& h, const Eigen::MatrixXcd& op,
                                 double t);

/// Local projector 1/2 - S^z on `site` of a spin-1/2 chain, as a full-space
/// diagonal matrix.
Eigen::MatrixXcd local_sz_projector(int sites, int site);

/// Operator space entanglement entropy across the bond after `cut` sites:
/// normalize O by its Hilbert-Schmidt norm, reshape the vectorized operator
/// across the cut and take the entropy of the squared Schmidt spectrum.
double osee(const Eigen::MatrixXcd& op, int cut, int sites, int local_dim = 2);

/// Time series of an entropy-like quantity with run metadata.
struct EntropyTrace {
    std::vector<double> times;
    std::vector<double> values;
    int cut = 0;
    int sites = 0;
    std::string model;     ///< "xxx-proxy" or "s-minus1"
    std::string protocol;  ///< "join-open", "join-ring", "osee", ...
};

struct FitResult {
    double c_eff = 0.0;    ///< 3 x fitted slope of S vs ln t
    double tau_eff = 0.0;  ///< exp(-b/a)
    double slope = 0.0;
    double intercept = 0.0;
    std::pair<double, double> window;  ///< (t_min, t_max) used
    double residual = 0.0;             ///< rms fit residual
};

/// Least squares of S = a ln t + b on the window; c_eff = 3a, tau_eff =
/// exp(-b/a). Needs >= 6 points with t > 0 in the window.
FitResult fit_log_growth(const EntropyTrace& trace, double t_min, double t_max);

/// Static block-entropy scan of a periodic ground state: S(l) for each block
/// length, fitted against the periodic CFT form
///   S(l) = (c/3) ln[(L/pi) sin(pi l / L)] + const,
/// whose chord length reduces to l for l << L. Returns the entropies and the
/// fit (c_eff = 3a; tau_eff plays the role of the UV cutoff).
std::pair<std::vector<double>, FitResult> static_block_entropy_scan(
    const StateVector& ground, const std::vector<int>& block_lengths);

/// First time after which |dS/dt| stays below eps_rate for the rest of the
/// trace. Throws if the trace never settles.
double saturation_detect(const EntropyTrace& trace, double eps_rate);

/// Geometry of the join protocol: `open` joins two open halves with a single
/// junction bond (one defect, the boundary-CFT setup); `ring` additionally
/// closes the chain, creating a defect at both ends of the half-block.
enum class JoinGeometry { Open, Ring };

/// Dynamics backend for the quench protocol. The proxy chain realizes the
/// c = 1 growth laws at desk scale. The truncated s = -1 chain is opt-in:
/// its ground state is the separable Fock vacuum, which is stationary under
/// the joined chain, so the protocol is recorded honestly as a flat trace
/// (the c = 1 dynamics of that model lives in its dominant sector, which is
/// what the proxy chain emulates).
enum class QuenchModel { XxxProxy, SMinusOne };

struct QuenchSpec {
    int sites = 16;              ///< total chain length, even
    QuenchModel model = QuenchModel::XxxProxy;
    int n_max = 3;               ///< Fock cutoff for the s = -1 backend
    JoinGeometry geometry = JoinGeometry::Open;
    std::vector<double> times;   ///< ascending, t = 0 implied as reference
    int cut = -1;                ///< default: the junction bond (sites/2)
    GroundStateOptions ground;
    EvolveOptions evolve;
};

/// Full join-halves local-quench protocol: prepare both halves' ground
/// states, join, evolve, record S(t) at the cut. The s = -1 backend notes
/// its cutoff and pole-sector counts in the trace model string.
EntropyTrace run_local_quench(const QuenchSpec& spec);

/// Local operator whose Heisenberg evolution the OSEE trace follows.
enum class OseeOperator {
    SzProjector,  ///< 1/2 - S^z, the cited reference operator
    Sz,           ///< bare S^z
    Sx,           ///< local spin flip
};

struct OseeSpec {
    int sites = 12;
    int site = 4;                ///< operator position (0-based)
    int cut = 4;                 ///< bond index
    OseeOperator op = OseeOperator::SzProjector;
    std::vector<double> times;
    bool periodic = false;
};

/// Local spin operators on a spin-1/2 chain as full-space matrices.
Eigen::MatrixXcd local_spin_operator(int sites, int site, OseeOperator kind);

/// OSEE trace of a Heisenberg-evolved local operator on the XXX proxy chain.
EntropyTrace run_osee_trace(const OseeSpec& spec);

}  // namespace lsc::quench
