#pragma once

#include <vector>

namespace lsc::thermo {

/// Interaction kernel K(l,m) = 2 / (1 + (l-m)^2); even, symmetric, max 2.
double kernel(double lambda, double mu);
inline double kernel0(double lambda) { return kernel(lambda, 0.0); }
/// d/dl K(l,m).
double kernel_dl(double lambda, double mu);

/// Guard rails for the Fermi point. Near q_min the interior sea is empty
/// (h -> 2); past q_max it approaches the singular full-line regime (h -> 0,
/// Fourier solution 1/(e^|w| - 1), non-normalizable). The exterior geometry
/// is singular at small q for the same full-line reason.
inline constexpr double q_min = 1e-3;
inline constexpr double q_max = 300.0;

/// Which rapidity domain the Fermi sea occupies.
///
/// Interior: the condensed Fermi sphere [-q, q] -- the dominant
/// (energy-maximizing) sea whose gapless edges carry the c = 1 structure;
/// all thermodynamic pipeline quantities use it.
///
/// Exterior: the complementary domain (-inf,-q] u [q,inf). Its finite-size
/// realization is a scale-free condensate (the inner edge drifts with L),
/// kept for diagnostics with a documented analytic tail closure.
enum class SeaGeometry { Interior, Exterior };

/// Change of variables compactifying each tail of the exterior domain.
enum class TailMap {
    InverseU,  ///< lambda = q/u, u in (0,1], Gauss-Legendre in u (default)
    TanTheta,  ///< lambda = q + tan(pi t / 2), t in (0,1), Gauss-Legendre in t
};

/// Quadrature over the positive half of the occupied sea; the negative half
/// is generated by reflection (every driver here is even). For the exterior
/// geometry, the kernel has unit width in lambda while the compactified node
/// spacing grows without bound, so collocation is restricted to the prefix
/// that resolves the kernel (bulk_count); past it the solvers close the
/// system with the appropriate asymptotic form.
struct SeaGrid {
    SeaGeometry geometry = SeaGeometry::Interior;
    double q = 0.0;
    int resolution = 0;  ///< nodes in the positive half
    TailMap map = TailMap::InverseU;  ///< exterior only
    std::vector<double> pos_nodes;    ///< ascending; [0,q] interior, [q,inf) exterior
    std::vector<double> pos_weights;
    int bulk_count = 0;               ///< nodes used as collocation unknowns
    double lambda_solve = 0.0;        ///< last collocation node

    /// Full-domain nodes, ascending (negative half first).
    std::vector<double> full_nodes() const;
    std::vector<double> full_weights() const;
    /// Integral of an even function over the full occupied domain given its
    /// values at pos_nodes (twice the positive half, pairwise-summed).
    double integrate_even(const std::vector<double>& values_at_pos_nodes) const;
};

/// Exterior-domain grid; also the workhorse for
/// exterior quadrature checks (exact to ~1e-14 on kernel-class integrands).
SeaGrid make_exterior_grid(double q, int resolution, TailMap map = TailMap::InverseU);
/// Interior grid: Gauss-Legendre on [0, q], folded.
SeaGrid make_interior_grid(double q, int resolution);

/// Particle density on the occupied domain:
///   2 pi rho_p(l) = int_sea K(l,m) rho_p(m) dm + K(l).
/// Dense LU of the folded Nystrom system. Interior: plain collocation.
/// Exterior: bulk collocation plus the sparse-regime tail closure
/// rho(l) = (1 + n)/(pi l^2) with the total density n as an extra linear
/// unknown.
struct DensitySolution {
    SeaGrid grid;
    std::vector<double> rho_p;   ///< values at grid.pos_nodes
    double h = 0.0;              ///< chemical potential that fixed q (NaN if standalone)
    double n_density = 0.0;      ///< int_sea rho_p, particles per site

    double rho_p_at(double lambda) const;   ///< Nystrom interpolant on the occupied domain
};

DensitySolution solve_density(double q, int resolution,
                              SeaGeometry geometry = SeaGeometry::Interior,
                              TailMap map = TailMap::InverseU);

/// Vacancy density rho_t(l) = (1/2pi) [ int_sea K(l,m) rho_p(m) dm + K(l) ],
/// defined for every real l; equals rho_p on the occupied domain and the hole
/// density off it.
double vacancy_density(const DensitySolution& dens, double lambda);
double hole_density(const DensitySolution& dens, double lambda);

/// Dressed energy: eps0(l) = eps(l) - (1/2pi) int_sea K(l,m) eps(m) dm with
/// driving term eps0(l) = 2/(l^2+1) - h. Sign convention for the dominant
/// (interior) sea: occupied states carry eps > 0 (the sea maximizes the
/// energy; the reflected Hamiltonian restores the textbook signs), and
/// eps(+-q) = 0 once q is the Fermi point for this h.
struct DressedEnergySolution {
    SeaGrid grid;
    std::vector<double> eps;  ///< values at grid.pos_nodes
    double h = 0.0;

    double eps_at(double lambda) const;        ///< interpolant, any real lambda
    double eps_prime_at(double lambda) const;  ///< analytic derivative of the interpolant
};

DressedEnergySolution solve_dressed_energy(double q, double h, int resolution,
                                           SeaGeometry geometry = SeaGeometry::Interior,
                                           TailMap map = TailMap::InverseU);

struct FermiOptions {
    int resolution = 256;
    SeaGeometry geometry = SeaGeometry::Interior;
    TailMap map = TailMap::InverseU;
    double tol = 1e-12;   ///< on |eps(q)|
    int max_iter = 200;
};

/// Fermi point q(h): the boundary condition eps(q) = eps(-q) = 0 determines
/// q. For the interior sea, eps(q) = D(q) - h xi(q) with D the dressed bare
/// band and xi the dressed charge, so h(q) = D(q)/xi(q) is monotone and the
/// zero is bracketed from the undressed estimate q0 = sqrt(2/h - 1).
/// Valid for 0 < h < 2; h -> 2 empties the sea (q below q_min) and h -> 0
/// approaches the singular full-line regime (q above q_max).
double find_fermi_point(double h, const FermiOptions& opts = {});

/// Fermi velocity v_F = |eps'(q)| / (2 pi rho_t(q)) > 0. The magnitude makes
/// the value orientation-free: for the dominant sea eps decreases through
/// zero moving outward at +q.
double fermi_velocity(const DensitySolution& dens, const DressedEnergySolution& eps);

/// Bulk grand-canonical energy density int_sea eps0(l) rho_p(l) dl, the O(L)
/// coefficient of the finite-size expansion of E - h N.
double bulk_energy_density(const DensitySolution& dens, double h);

/// Dressed charge xi(l): xi = 1 + (1/2pi) int_sea K xi; returns xi(q).
/// Controls the filling-quantization term of the finite-size spectrum.
double dressed_charge(double q, int resolution,
                      SeaGeometry geometry = SeaGeometry::Interior,
                      TailMap map = TailMap::InverseU);

/// Everything the finite-size and DIS pipelines need at one chemical potential.
struct ThermoSummary {
    double h = 0.0;
    double q = 0.0;
    double n_density = 0.0;
    double v_fermi = 0.0;
    double eps_inf = 0.0;   ///< grand-canonical bulk density, lim (E - hN)/L
    double xi = 0.0;
    int resolution = 0;
};

ThermoSummary compute_thermo(double h, const FermiOptions& opts = {});

}  // namespace lsc::thermo
