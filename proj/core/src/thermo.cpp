#include "lsc/thermo.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lsc/errors.hpp"
#include "lsc/numerics.hpp"

namespace lsc::thermo {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;
// A node resolves the unit-width kernel ridge if its spacing stays below this.
constexpr double max_node_spacing = 0.5;
}  // namespace

double kernel(double lambda, double mu) {
    if (!std::isfinite(lambda) || !std::isfinite(mu))
        throw DomainError("kernel: non-finite argument");
    const double d = lambda - mu;
    return 2.0 / (1.0 + d * d);
}

double kernel_dl(double lambda, double mu) {
    const double d = lambda - mu;
    const double den = 1.0 + d * d;
    return -4.0 * d / (den * den);
}

std::vector<double> SeaGrid::full_nodes() const {
    std::vector<double> out;
    out.reserve(2 * pos_nodes.size());
    for (auto it = pos_nodes.rbegin(); it != pos_nodes.rend(); ++it) out.push_back(-*it);
    out.insert(out.end(), pos_nodes.begin(), pos_nodes.end());
    return out;
}

std::vector<double> SeaGrid::full_weights() const {
    std::vector<double> out;
    out.reserve(2 * pos_weights.size());
    for (auto it = pos_weights.rbegin(); it != pos_weights.rend(); ++it) out.push_back(*it);
    out.insert(out.end(), pos_weights.begin(), pos_weights.end());
    return out;
}

double SeaGrid::integrate_even(const std::vector<double>& values) const {
    if (values.size() != pos_nodes.size())
        throw DomainError("SeaGrid::integrate_even: size mismatch");
    std::vector<double> terms(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        terms[i] = pos_weights[i] * values[i];
    return 2.0 * num::pairwise_sum(terms);
}

namespace {

void check_q(double q, const char* what) {
    if (!(q > q_min)) {
        std::ostringstream os;
        os << what << ": q = " << q << " at or below q_min = " << q_min;
        throw DomainError(os.str());
    }
    if (!(q < q_max)) {
        std::ostringstream os;
        os << what << ": q = " << q << " at or above q_max = " << q_max
           << " (full-line singular regime)";
        throw DomainError(os.str());
    }
}

}  // namespace

SeaGrid make_exterior_grid(double q, int resolution, TailMap map) {
    check_q(q, "make_exterior_grid");
    if (resolution < 4) throw DomainError("make_exterior_grid: resolution too small");
    SeaGrid g;
    g.geometry = SeaGeometry::Exterior;
    g.q = q;
    g.resolution = resolution;
    g.map = map;
    g.pos_nodes.resize(resolution);
    g.pos_weights.resize(resolution);
    const auto rule = num::gauss_legendre_01(resolution);
    if (map == TailMap::InverseU) {
        // lambda = q/u maps (0,1] to [q,inf); dl = q/u^2 du. Descending u gives
        // ascending lambda.
        for (int i = 0; i < resolution; ++i) {
            const double u = rule.nodes[resolution - 1 - i];
            g.pos_nodes[i] = q / u;
            g.pos_weights[i] = rule.weights[resolution - 1 - i] * q / (u * u);
        }
    } else {
        // lambda = q + tan(pi t / 2), t in (0,1); dl = (pi/2) sec^2(pi t/2) dt.
        for (int i = 0; i < resolution; ++i) {
            const double t = rule.nodes[i];
            const double c = std::cos(0.5 * pi * t);
            g.pos_nodes[i] = q + std::tan(0.5 * pi * t);
            g.pos_weights[i] = rule.weights[i] * 0.5 * pi / (c * c);
        }
    }
    g.bulk_count = resolution;
    for (int i = 0; i + 1 < resolution; ++i) {
        if (g.pos_nodes[i + 1] - g.pos_nodes[i] > max_node_spacing) {
            g.bulk_count = i + 1;
            break;
        }
    }
    g.lambda_solve = g.pos_nodes[g.bulk_count - 1];
    return g;
}

SeaGrid make_interior_grid(double q, int resolution) {
    check_q(q, "make_interior_grid");
    if (resolution < 4) throw DomainError("make_interior_grid: resolution too small");
    SeaGrid g;
    g.geometry = SeaGeometry::Interior;
    g.q = q;
    g.resolution = resolution;
    g.pos_nodes.resize(resolution);
    g.pos_weights.resize(resolution);
    const auto rule = num::gauss_legendre_01(resolution);
    for (int i = 0; i < resolution; ++i) {
        g.pos_nodes[i] = q * rule.nodes[i];
        g.pos_weights[i] = q * rule.weights[i];
    }
    g.bulk_count = resolution;
    g.lambda_solve = q;
    return g;
}

namespace {

// Folded kernel for even unknowns: K(l,m) + K(l,-m), integrated over the
// positive half only.
double folded_kernel(double lambda, double mu) {
    return kernel(lambda, mu) + kernel(lambda, -mu);
}

double folded_kernel_dl(double lambda, double mu) {
    return kernel_dl(lambda, mu) + kernel_dl(lambda, -mu);
}

void check_conditioning(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu, const char* what,
                        double q, int n) {
    const double rc = lu.rcond();
    if (!(rc > 1e-14)) {
        std::ostringstream os;
        os << what << ": Nystrom system ill-conditioned (rcond estimate " << rc
           << ") at q = " << q << ", " << n << " collocation nodes";
        throw SolverError(os.str());
    }
}

// Solves f = driver + (1/2pi) int_sea K f with the tail of f past the bulk
// nodes pinned to the given closure values (exterior geometry; empty for
// interior, where every node is a collocation unknown).
std::vector<double> solve_fredholm(const SeaGrid& g, const std::vector<double>& driver,
                                   const std::vector<double>& tail_closure,
                                   const char* what) {
    const int nb = g.bulk_count;
    const int n = g.resolution;
    Eigen::MatrixXd A(nb, nb);
    Eigen::VectorXd b(nb);
    for (int i = 0; i < nb; ++i) {
        const double li = g.pos_nodes[i];
        double tail = 0.0;
        for (int j = nb; j < n; ++j)
            tail += g.pos_weights[j] * folded_kernel(li, g.pos_nodes[j]) * tail_closure[j - nb];
        b[i] = driver[i] + tail / two_pi;
        for (int j = 0; j < nb; ++j)
            A(i, j) = ((i == j) ? 1.0 : 0.0) -
                      g.pos_weights[j] * folded_kernel(li, g.pos_nodes[j]) / two_pi;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    check_conditioning(lu, what, g.q, nb);
    Eigen::VectorXd x = lu.solve(b);
    if (!x.allFinite()) throw SolverError(std::string(what) + ": non-finite Nystrom solution");
    std::vector<double> f(n);
    for (int i = 0; i < nb; ++i) f[i] = x[i];
    for (int j = nb; j < n; ++j) f[j] = tail_closure[j - nb];
    return f;
}

}  // namespace

DensitySolution solve_density(double q, int resolution, SeaGeometry geometry, TailMap map) {
    if (resolution < 32) throw DomainError("solve_density: resolution must be >= 32");
    DensitySolution sol;
    sol.h = std::nan("");

    if (geometry == SeaGeometry::Interior) {
        sol.grid = make_interior_grid(q, resolution);
        std::vector<double> driver(resolution);
        for (int i = 0; i < resolution; ++i)
            driver[i] = kernel0(sol.grid.pos_nodes[i]) / two_pi;
        sol.rho_p = solve_fredholm(sol.grid, driver, {}, "solve_density");
        for (double v : sol.rho_p)
            if (!(v > 0.0)) throw SolverError("solve_density: non-positive density");
        sol.n_density = sol.grid.integrate_even(sol.rho_p);
        return sol;
    }

    sol.grid = make_exterior_grid(q, resolution, map);
    const auto& g = sol.grid;
    const int nb = g.bulk_count;
    const int nt = resolution - nb;

    // Unknowns: rho at the bulk nodes plus the total density n. Tail values
    // follow the sparse-regime counting form rho(l) = (1 + n)/(pi l^2):
    //   2 pi rho_i = sum_bulk w K rho + (1+n)/pi * T_i + K_i,
    //   n = 2 sum_bulk w rho + (1+n)/pi * S.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nb + 1, nb + 1);
    Eigen::VectorXd b(nb + 1);
    std::vector<double> tail_T(nb, 0.0);
    double tail_S = 0.0;
    for (int j = 0; j < nt; ++j) {
        const double lj = g.pos_nodes[nb + j];
        const double wj = g.pos_weights[nb + j] / (lj * lj);
        for (int i = 0; i < nb; ++i)
            tail_T[i] += wj * folded_kernel(g.pos_nodes[i], lj);
        tail_S += 2.0 * wj;
    }
    for (int i = 0; i < nb; ++i) {
        const double li = g.pos_nodes[i];
        for (int j = 0; j < nb; ++j)
            A(i, j) = ((i == j) ? 1.0 : 0.0) -
                      g.pos_weights[j] * folded_kernel(li, g.pos_nodes[j]) / two_pi;
        A(i, nb) = -tail_T[i] / (pi * two_pi);
        b[i] = (kernel0(li) + tail_T[i] / pi) / two_pi;
    }
    for (int j = 0; j < nb; ++j) A(nb, j) = -2.0 * g.pos_weights[j];
    A(nb, nb) = 1.0 - tail_S / pi;
    b[nb] = tail_S / pi;

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    check_conditioning(lu, "solve_density", q, nb);
    Eigen::VectorXd x = lu.solve(b);
    if (!x.allFinite()) throw SolverError("solve_density: non-finite Nystrom solution");

    sol.n_density = x[nb];
    sol.rho_p.resize(resolution);
    for (int i = 0; i < nb; ++i) {
        if (!(x[i] > 0.0))
            throw SolverError("solve_density: non-positive density in the bulk");
        sol.rho_p[i] = x[i];
    }
    const double c_tail = (1.0 + sol.n_density) / pi;
    for (int j = nb; j < resolution; ++j)
        sol.rho_p[j] = c_tail / (g.pos_nodes[j] * g.pos_nodes[j]);
    return sol;
}

double DensitySolution::rho_p_at(double lambda) const {
    const double a = std::abs(lambda);
    const bool occupied = (grid.geometry == SeaGeometry::Interior)
                              ? (a <= grid.q + 1e-12)
                              : (a >= grid.q - 1e-12);
    if (!occupied)
        throw DomainError("rho_p_at: point lies outside the occupied domain");
    return vacancy_density(*this, lambda);
}

double vacancy_density(const DensitySolution& dens, double lambda) {
    if (!std::isfinite(lambda)) throw DomainError("vacancy_density: non-finite lambda");
    const auto& g = dens.grid;
    std::vector<double> terms(g.resolution);
    for (int j = 0; j < g.resolution; ++j)
        terms[j] = g.pos_weights[j] * folded_kernel(lambda, g.pos_nodes[j]) * dens.rho_p[j];
    return (num::pairwise_sum(terms) + kernel0(lambda)) / two_pi;
}

double hole_density(const DensitySolution& dens, double lambda) {
    const double a = std::abs(lambda);
    const bool occupied = (dens.grid.geometry == SeaGeometry::Interior)
                              ? (a <= dens.grid.q)
                              : (a >= dens.grid.q);
    if (occupied) return 0.0;
    return vacancy_density(dens, lambda);
}

DressedEnergySolution solve_dressed_energy(double q, double h, int resolution,
                                           SeaGeometry geometry, TailMap map) {
    if (resolution < 32) throw DomainError("solve_dressed_energy: resolution must be >= 32");
    DressedEnergySolution sol;
    sol.h = h;
    sol.grid = (geometry == SeaGeometry::Interior) ? make_interior_grid(q, resolution)
                                                   : make_exterior_grid(q, resolution, map);
    const auto& g = sol.grid;
    std::vector<double> driver(g.bulk_count);
    for (int i = 0; i < g.bulk_count; ++i) {
        const double l = g.pos_nodes[i];
        driver[i] = 2.0 / (l * l + 1.0) - h;
    }
    // Exterior tail: the dressing dies off in the sparse regime, eps -> eps0.
    std::vector<double> closure(g.resolution - g.bulk_count);
    for (int j = g.bulk_count; j < g.resolution; ++j) {
        const double l = g.pos_nodes[j];
        closure[j - g.bulk_count] = 2.0 / (l * l + 1.0) - h;
    }
    sol.eps = solve_fredholm(g, driver, closure, "solve_dressed_energy");
    return sol;
}

double DressedEnergySolution::eps_at(double lambda) const {
    if (!std::isfinite(lambda)) throw DomainError("eps_at: non-finite lambda");
    std::vector<double> terms(grid.resolution);
    for (int j = 0; j < grid.resolution; ++j)
        terms[j] = grid.pos_weights[j] * folded_kernel(lambda, grid.pos_nodes[j]) * eps[j];
    return 2.0 / (lambda * lambda + 1.0) - h + num::pairwise_sum(terms) / two_pi;
}

double DressedEnergySolution::eps_prime_at(double lambda) const {
    std::vector<double> terms(grid.resolution);
    for (int j = 0; j < grid.resolution; ++j)
        terms[j] = grid.pos_weights[j] * folded_kernel_dl(lambda, grid.pos_nodes[j]) * eps[j];
    const double den = lambda * lambda + 1.0;
    return -4.0 * lambda / (den * den) + num::pairwise_sum(terms) / two_pi;
}

double find_fermi_point(double h, const FermiOptions& opts) {
    if (!(h > 0.0 && h < 2.0))
        throw DomainError("find_fermi_point: requires 0 < h < 2");
    auto g_of_q = [&](double q) {
        return solve_dressed_energy(q, h, opts.resolution, opts.geometry, opts.map).eps_at(q);
    };
    // Undressed estimate: eps0(q0) = 0.
    const double q0 = std::sqrt(2.0 / h - 1.0);
    if (q0 <= q_min)
        throw DomainError("find_fermi_point: h too close to 2, Fermi point below q_min");
    if (q0 >= q_max)
        throw DomainError("find_fermi_point: h too close to 0, Fermi point beyond q_max "
                          "(full-line singular regime)");

    // For the interior sea the dressing raises eps(q) above eps0(q0) = 0, so
    // the zero lies above q0; scan outward, fall back to an inward scan.
    double qa = q0, ga = g_of_q(q0);
    double qb = 0.0, gb = 0.0;
    bool bracketed = false;
    double scan = q0;
    for (int i = 0; i < 400 && scan * 1.05 < q_max; ++i) {
        const double qn = scan * 1.05;
        const double gn = g_of_q(qn);
        if ((ga <= 0.0 && gn >= 0.0) || (ga >= 0.0 && gn <= 0.0)) {
            qb = qn;
            gb = gn;
            bracketed = true;
            break;
        }
        scan = qn;
        qa = qn;
        ga = gn;
    }
    if (!bracketed) {
        qa = q0;
        ga = g_of_q(q0);
        scan = q0;
        for (int i = 0; i < 400 && scan * 0.95 > q_min; ++i) {
            const double qn = scan * 0.95;
            const double gn = g_of_q(qn);
            if ((ga <= 0.0 && gn >= 0.0) || (ga >= 0.0 && gn <= 0.0)) {
                qb = qn;
                gb = gn;
                bracketed = true;
                break;
            }
            scan = qn;
            qa = qn;
            ga = gn;
        }
    }
    if (!bracketed) {
        std::ostringstream os;
        os << "find_fermi_point: no sign change of eps(q) found for h = " << h
           << " scanning q in (" << q_min << ", " << q_max << ")";
        throw SolverError(os.str());
    }
    // Bisection with a secant refinement step each iteration.
    double lo = std::min(qa, qb), hi = std::max(qa, qb);
    double glo = (qa < qb) ? ga : gb, ghi = (qa < qb) ? gb : ga;
    double q_best = 0.5 * (lo + hi), g_best = 0.0;
    for (int it = 0; it < opts.max_iter; ++it) {
        double qm = 0.5 * (lo + hi);
        if (glo != ghi) {
            const double qs = lo - glo * (hi - lo) / (ghi - glo);
            if (qs > lo + 0.1 * (hi - lo) && qs < hi - 0.1 * (hi - lo)) qm = qs;
        }
        const double gm = g_of_q(qm);
        q_best = qm;
        g_best = gm;
        if (std::abs(gm) <= opts.tol || (hi - lo) < 1e-15 * hi) break;
        if ((glo <= 0.0) == (gm <= 0.0)) {
            lo = qm;
            glo = gm;
        } else {
            hi = qm;
            ghi = gm;
        }
    }
    if (std::abs(g_best) > 1e-10) {
        std::ostringstream os;
        os << "find_fermi_point: |eps(q)| = " << std::abs(g_best)
           << " did not reach tolerance for h = " << h;
        throw SolverError(os.str());
    }
    return q_best;
}

double fermi_velocity(const DensitySolution& dens, const DressedEnergySolution& eps) {
    if (std::abs(dens.grid.q - eps.grid.q) > 1e-12 * (1.0 + dens.grid.q))
        throw DomainError("fermi_velocity: density and dressed-energy grids disagree on q");
    const double q = eps.grid.q;
    const double rho_t = vacancy_density(dens, q);
    if (!(rho_t > 1e-12))
        throw DomainError("fermi_velocity: vacancy density at the Fermi point is degenerate");
    return std::abs(eps.eps_prime_at(q)) / (two_pi * rho_t);
}

double bulk_energy_density(const DensitySolution& dens, double h) {
    const auto& g = dens.grid;
    std::vector<double> vals(g.resolution);
    for (int i = 0; i < g.resolution; ++i) {
        const double l = g.pos_nodes[i];
        vals[i] = (2.0 / (l * l + 1.0) - h) * dens.rho_p[i];
    }
    return g.integrate_even(vals);
}

double dressed_charge(double q, int resolution, SeaGeometry geometry, TailMap map) {
    SeaGrid g = (geometry == SeaGeometry::Interior) ? make_interior_grid(q, resolution)
                                                    : make_exterior_grid(q, resolution, map);
    std::vector<double> driver(g.bulk_count, 1.0);
    std::vector<double> closure(g.resolution - g.bulk_count, 1.0);
    const auto xi = solve_fredholm(g, driver, closure, "dressed_charge");
    // Interpolate xi back to the Fermi point.
    std::vector<double> terms(resolution);
    for (int j = 0; j < resolution; ++j)
        terms[j] = g.pos_weights[j] * folded_kernel(q, g.pos_nodes[j]) * xi[j];
    return 1.0 + num::pairwise_sum(terms) / two_pi;
}

ThermoSummary compute_thermo(double h, const FermiOptions& opts) {
    ThermoSummary s;
    s.h = h;
    s.resolution = opts.resolution;
    s.q = find_fermi_point(h, opts);
    DensitySolution dens = solve_density(s.q, opts.resolution, opts.geometry, opts.map);
    dens.h = h;
    DressedEnergySolution eps =
        solve_dressed_energy(s.q, h, opts.resolution, opts.geometry, opts.map);
    s.n_density = dens.n_density;
    s.v_fermi = fermi_velocity(dens, eps);
    s.eps_inf = bulk_energy_density(dens, h);
    s.xi = dressed_charge(s.q, opts.resolution, opts.geometry, opts.map);
    return s;
}

}  // namespace lsc::thermo
