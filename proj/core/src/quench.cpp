#include "lsc/quench.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "lsc/errors.hpp"
#include "lsc/numerics.hpp"

namespace lsc::quench {

namespace {
using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

std::size_t ipow(int b, int e) {
    std::size_t r = 1;
    while (e-- > 0) r *= static_cast<std::size_t>(b);
    return r;
}

Eigen::VectorXd chain_diagonal(const chain::ChainHamiltonian& h) {
    const std::size_t dim = h.dim();
    const int d = h.local_dim;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
    for (int b = 0; b < h.bond_count(); ++b) {
        const int a_site = b;
        const int b_site = (b + 1) % h.sites;
        std::size_t stride_a = 1, stride_b = 1;
        for (int s = h.sites - 1; s > a_site; --s) stride_a *= d;
        for (int s = h.sites - 1; s > b_site; --s) stride_b *= d;
        for (std::size_t i = 0; i < dim; ++i) {
            const int sa = static_cast<int>((i / stride_a) % d);
            const int sb = static_cast<int>((i / stride_b) % d);
            diag[static_cast<Eigen::Index>(i)] += h.bond(sa * d + sb, sa * d + sb);
        }
    }
    return diag;
}

}  // namespace

void StateVector::normalize() {
    const double n = amps.norm();
    if (n == 0.0) throw DomainError("StateVector::normalize: zero state");
    amps /= n;
}

GroundState ground_state(const chain::ChainHamiltonian& h, const GroundStateOptions& opts) {
    const std::size_t dim = h.dim();
    const Eigen::Index n = static_cast<Eigen::Index>(dim);
    const int m = std::max(4, std::min<int>(opts.krylov_dim, static_cast<int>(dim)));

    // Deterministic start: basis state with the smallest diagonal entry.
    const Eigen::VectorXd diag = chain_diagonal(h);
    Eigen::Index start = 0;
    diag.minCoeff(&start);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    v[start] = 1.0;

    Eigen::MatrixXd basis(n, m);
    Eigen::VectorXd w(n), hv(n);
    double energy = 0.0, residual = 0.0;
    int restarts = 0;
    for (; restarts < opts.max_restarts; ++restarts) {
        Eigen::VectorXd alpha(m), beta(m);
        basis.col(0) = v;
        int built = m;
        double beta_last = 0.0;
        for (int j = 0; j < m; ++j) {
            h.apply(basis.col(j).eval(), hv);
            alpha[j] = basis.col(j).dot(hv);
            w = hv - alpha[j] * basis.col(j);
            if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
            // Full reorthogonalization keeps the basis clean at this scale.
            for (int k = 0; k <= j; ++k) w -= basis.col(k).dot(w) * basis.col(k);
            const double nb = w.norm();
            if (j + 1 < m) {
                if (nb < 1e-13) {
                    built = j + 1;
                    beta_last = 0.0;
                    break;
                }
                beta[j] = nb;
                basis.col(j + 1) = w / nb;
            } else {
                beta_last = nb;
            }
        }
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(built, built);
        for (int j = 0; j < built; ++j) {
            t(j, j) = alpha[j];
            if (j + 1 < built) t(j, j + 1) = t(j + 1, j) = beta[j];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        energy = es.eigenvalues()[0];
        const Eigen::VectorXd u = es.eigenvectors().col(0);
        v = basis.leftCols(built) * u;
        v.normalize();
        residual = std::abs(beta_last * u[built - 1]);
        if (residual <= opts.tol || built < m) {
            // Confirm with the true residual.
            h.apply(v, hv);
            residual = (hv - energy * v).norm();
            if (residual <= opts.tol) break;
        }
    }
    if (residual > opts.tol) {
        std::ostringstream os;
        os << "ground_state: residual " << residual << " above tolerance " << opts.tol
           << " after " << restarts << " restarts";
        throw SolverError(os.str());
    }

    // Canonical sign: largest-magnitude amplitude positive.
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;

    GroundState g;
    g.state.sites = h.sites;
    g.state.local_dim = h.local_dim;
    g.state.amps = v.cast<cplx>();
    g.energy = energy;
    g.residual = residual;
    g.restarts = restarts;
    return g;
}

StateVector joined_initial_state(const chain::ChainHamiltonian& h_left,
                                 const chain::ChainHamiltonian& h_right,
                                 const GroundStateOptions& opts) {
    if (h_left.local_dim != h_right.local_dim)
        throw DomainError("joined_initial_state: local dimension mismatch");
    const auto gl = ground_state(h_left, opts);
    const auto gr = ground_state(h_right, opts);
    StateVector out;
    out.sites = h_left.sites + h_right.sites;
    out.local_dim = h_left.local_dim;
    const Eigen::Index nl = gl.state.amps.size();
    const Eigen::Index nr = gr.state.amps.size();
    out.amps.resize(nl * nr);
    for (Eigen::Index a = 0; a < nl; ++a)
        out.amps.segment(a * nr, nr) = gl.state.amps[a] * gr.state.amps;
    out.normalize();
    return out;
}

namespace {

// One Lanczos exp(-i H dt) step; returns the actual step taken.
double krylov_step(const chain::ChainHamiltonian& h, Eigen::VectorXcd& psi, double dt,
                   int m, double tol) {
    const Eigen::Index n = psi.size();
    m = std::max(4, std::min<int>(m, static_cast<int>(n)));
    Eigen::MatrixXcd basis(n, m);
    Eigen::VectorXd alpha(m), beta(m);
    const double psi_norm = psi.norm();
    basis.col(0) = psi / psi_norm;
    Eigen::VectorXcd hv(n), w(n);
    int built = m;
    double beta_last = 0.0;
    for (int j = 0; j < m; ++j) {
        h.apply(basis.col(j).eval(), hv);
        alpha[j] = basis.col(j).dot(hv).real();
        w = hv - alpha[j] * basis.col(j);
        if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
        for (int k = 0; k <= j; ++k) w -= basis.col(k).dot(w) * basis.col(k);
        const double nb = w.norm();
        if (j + 1 < m) {
            if (nb < 1e-13) {
                built = j + 1;
                beta_last = 0.0;
                break;
            }
            beta[j] = nb;
            basis.col(j + 1) = w / nb;
        } else {
            beta_last = nb;
        }
    }
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(built, built);
    for (int j = 0; j < built; ++j) {
        t(j, j) = alpha[j];
        if (j + 1 < built) t(j, j + 1) = t(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    double step = dt;
    for (int attempt = 0; attempt < 60; ++attempt) {
        Eigen::VectorXcd phase(built);
        for (int k = 0; k < built; ++k)
            phase[k] = std::exp(cplx(0.0, -es.eigenvalues()[k] * step));
        Eigen::VectorXcd u =
            es.eigenvectors().cast<cplx>() *
            (phase.array() * es.eigenvectors().row(0).transpose().cast<cplx>().array())
                .matrix();
        const double err = beta_last * std::abs(u[built - 1]) * step;
        if (err <= tol || built < m || step <= 1e-12) {
            psi = psi_norm * (basis.leftCols(built) * u);
            return step;
        }
        step *= 0.5;
    }
    throw SolverError("krylov_step: step size underflow; reduce the time span or "
                      "raise the step tolerance");
}

}  // namespace

std::vector<StateVector> evolve(const chain::ChainHamiltonian& h, const StateVector& psi,
                                const std::vector<double>& times, const EvolveOptions& opts) {
    if (static_cast<std::size_t>(psi.amps.size()) != h.dim())
        throw DomainError("evolve: state dimension mismatch");
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (times[i] >= times[i + 1])
            throw DomainError("evolve: times must be strictly ascending");
    if (!times.empty() && times.front() < 0.0)
        throw DomainError("evolve: negative time");

    std::vector<StateVector> out;
    out.reserve(times.size());
    Eigen::VectorXcd cur = psi.amps;
    double t_cur = 0.0;
    for (double target : times) {
        while (t_cur < target - 1e-14) {
            const double want = std::min(opts.max_step, target - t_cur);
            const double taken = krylov_step(h, cur, want, opts.krylov_dim, opts.step_tol);
            t_cur += taken;
        }
        StateVector sv;
        sv.sites = psi.sites;
        sv.local_dim = psi.local_dim;
        sv.amps = cur;
        out.push_back(std::move(sv));
    }
    return out;
}

std::vector<double> schmidt_spectrum(const StateVector& psi, int cut) {
    if (cut < 0 || cut > psi.sites)
        throw DomainError("schmidt_spectrum: cut outside the chain");
    if (std::abs(psi.norm() - 1.0) > 1e-8)
        throw DomainError("schmidt_spectrum: state is not normalized");
    if (cut == 0 || cut == psi.sites) return {1.0};
    const std::size_t da = ipow(psi.local_dim, cut);
    const std::size_t db = ipow(psi.local_dim, psi.sites - cut);
    using RowMat =
        Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMat> m(psi.amps.data(), static_cast<Eigen::Index>(da),
                               static_cast<Eigen::Index>(db));
    Eigen::MatrixXcd gram;
    if (da <= db)
        gram = m * m.adjoint();
    else
        gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    std::vector<double> p(es.eigenvalues().data(),
                          es.eigenvalues().data() + es.eigenvalues().size());
    for (double& x : p) x = std::max(x, 0.0);
    std::sort(p.begin(), p.end(), std::greater<double>());
    return p;
}

namespace {

// Weights below the Hermitian-eigensolver noise floor are artifacts of the
// Gram route and are dropped; the entropy contribution of a true weight at
// the cutoff is ~3e-13, well under every tolerance in use.
constexpr double schmidt_weight_cutoff = 1e-14;

double spectrum_entropy(const std::vector<double>& p) {
    double s = 0.0;
    for (double x : p) {
        if (x > 1.0 - 1e-14) continue;  // rank-1 weight, exact zero contribution
        if (x > schmidt_weight_cutoff) s -= x * std::log(x);
    }
    return s;
}

}  // namespace

double entanglement_entropy(const StateVector& psi, int cut) {
    return spectrum_entropy(schmidt_spectrum(psi, cut));
}

double mutual_information(const StateVector& psi, int cut) {
    return 2.0 * entanglement_entropy(psi, cut);
}

OperatorEvolver::OperatorEvolver(const chain::ChainHamiltonian& h, const Eigen::MatrixXcd& op) {
    const std::size_t dim = h.dim();
    if (dim > 4096) {
        std::ostringstream os;
        os << "OperatorEvolver: dimension " << dim << " exceeds the dense budget (4096, ~"
           << (dim * dim * 16) / (1024 * 1024) << " MiB per operator)";
        throw DomainError(os.str());
    }
    if (op.rows() != static_cast<Eigen::Index>(dim) || op.cols() != op.rows())
        throw DomainError("OperatorEvolver: operator dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense());
    if (es.info() != Eigen::Success) throw SolverError("OperatorEvolver: eigensolver failed");
    eigvecs_ = es.eigenvectors();
    eigvals_ = es.eigenvalues();
    // W = V^T O V, done in real and imaginary parts to keep GEMMs real.
    const Eigen::MatrixXd wr = eigvecs_.transpose() * op.real() * eigvecs_;
    const Eigen::MatrixXd wi = eigvecs_.transpose() * op.imag() * eigvecs_;
    op_eigbasis_ = wr.cast<cplx>() + cplx(0.0, 1.0) * wi.cast<cplx>();
}

Eigen::MatrixXcd OperatorEvolver::at_time(double t) const {
    const Eigen::Index n = eigvals_.size();
    Eigen::VectorXcd u(n);
    for (Eigen::Index k = 0; k < n; ++k) u[k] = std::exp(cplx(0.0, eigvals_[k] * t));
    // O(t) = V [u W u*] V^T elementwise in the eigenbasis.
    Eigen::MatrixXcd m = u.asDiagonal() * op_eigbasis_ * u.conjugate().asDiagonal();
    const Eigen::MatrixXd re = eigvecs_ * m.real() * eigvecs_.transpose();
    const Eigen::MatrixXd im = eigvecs_ * m.imag() * eigvecs_.transpose();
    return re.cast<cplx>() + cplx(0.0, 1.0) * im.cast<cplx>();
}

Eigen::MatrixXcd evolve_operator(const chain::ChainHamiltonian& h, const Eigen::MatrixXcd& op,
                                 double t) {
    return OperatorEvolver(h, op).at_time(t);
}

Eigen::MatrixXcd local_sz_projector(int sites, int site) {
    if (site < 0 || site >= sites) throw DomainError("local_sz_projector: site out of range");
    const std::size_t dim = ipow(2, sites);
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                 static_cast<Eigen::Index>(dim));
    // Basis convention: bit 0 = spin up; 1/2 - S^z projects onto spin down.
    const std::size_t bit = std::size_t(1) << (sites - 1 - site);
    for (std::size_t i = 0; i < dim; ++i)
        if (i & bit) op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    return op;
}

double osee(const Eigen::MatrixXcd& op, int cut, int sites, int local_dim) {
    if (cut <= 0 || cut >= sites) throw DomainError("osee: cut must be interior");
    const std::size_t da = ipow(local_dim, cut);
    const std::size_t db = ipow(local_dim, sites - cut);
    if (op.rows() != static_cast<Eigen::Index>(da * db) || op.cols() != op.rows())
        throw DomainError("osee: operator dimension mismatch");
    const double hs2 = op.squaredNorm();
    if (!(hs2 > 0.0)) throw DomainError("osee: zero operator");

    // Vectorized operator reshaped across the cut: row (iA, jA), col (iB, jB).
    const std::size_t ra = da * da, rb = db * db;
    const bool gram_left = ra <= rb;
    const Eigen::Index gdim = static_cast<Eigen::Index>(gram_left ? ra : rb);
    Eigen::MatrixXcd reshaped(static_cast<Eigen::Index>(gram_left ? ra : rb),
                              static_cast<Eigen::Index>(gram_left ? rb : ra));
    for (std::size_t ia = 0; ia < da; ++ia)
        for (std::size_t ja = 0; ja < da; ++ja) {
            const std::size_t row = ia * da + ja;
            for (std::size_t ib = 0; ib < db; ++ib)
                for (std::size_t jb = 0; jb < db; ++jb) {
                    const std::size_t col = ib * db + jb;
                    const cplx v = op(static_cast<Eigen::Index>(ia * db + ib),
                                      static_cast<Eigen::Index>(ja * db + jb));
                    if (gram_left)
                        reshaped(static_cast<Eigen::Index>(row),
                                 static_cast<Eigen::Index>(col)) = v;
                    else
                        reshaped(static_cast<Eigen::Index>(col),
                                 static_cast<Eigen::Index>(row)) = v;
                }
        }
    Eigen::MatrixXcd gram = reshaped * reshaped.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram.topLeftCorner(gdim, gdim));
    std::vector<double> chi(es.eigenvalues().data(),
                            es.eigenvalues().data() + es.eigenvalues().size());
    double s = 0.0;
    for (double x : chi) {
        const double p = std::max(x, 0.0) / hs2;
        if (p > 1.0 - 1e-14) continue;  // rank-1 Schmidt form
        if (p > schmidt_weight_cutoff) s -= p * std::log(p);
    }
    return s;
}

FitResult fit_log_growth(const EntropyTrace& trace, double t_min, double t_max) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        const double t = trace.times[i];
        if (t <= 0.0 || t < t_min || t > t_max) continue;
        xs.push_back(std::log(t));
        ys.push_back(trace.values[i]);
    }
    if (xs.size() < 6)
        throw DomainError("fit_log_growth: need at least 6 points with t > 0 in the window");
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-12 * n * sxx)
        throw DomainError("fit_log_growth: degenerate window (no spread in ln t)");
    FitResult fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    if (fit.slope == 0.0) throw DomainError("fit_log_growth: zero slope, tau undefined");
    fit.c_eff = 3.0 * fit.slope;
    fit.tau_eff = std::exp(-fit.intercept / fit.slope);
    fit.window = {t_min, t_max};
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

std::pair<std::vector<double>, FitResult> static_block_entropy_scan(
    const StateVector& ground, const std::vector<int>& block_lengths) {
    std::vector<double> entropies;
    std::vector<double> xs, ys;
    for (int l : block_lengths) {
        if (l < 0 || l >= ground.sites)
            throw DomainError("static_block_entropy_scan: block length outside the chain");
        const double s = (l == 0) ? 0.0 : entanglement_entropy(ground, l);
        entropies.push_back(s);
        if (l > 0 && l < ground.sites) {
            const double chord =
                (ground.sites / pi) * std::sin(pi * static_cast<double>(l) / ground.sites);
            xs.push_back(std::log(chord));
            ys.push_back(s);
        }
    }
    if (xs.size() < 3)
        throw DomainError("static_block_entropy_scan: need at least 3 interior block lengths");
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-14)
        throw DomainError("static_block_entropy_scan: degenerate block set");
    FitResult fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    fit.c_eff = 3.0 * fit.slope;
    fit.tau_eff = (fit.slope != 0.0) ? std::exp(-fit.intercept / fit.slope) : 0.0;
    fit.window = {static_cast<double>(block_lengths.front()),
                  static_cast<double>(block_lengths.back())};
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / n);
    return {entropies, fit};
}

double saturation_detect(const EntropyTrace& trace, double eps_rate) {
    const std::size_t n = trace.times.size();
    if (n < 2 || trace.values.size() != n)
        throw DomainError("saturation_detect: trace too short");
    // Largest i such that every later increment stays below the rate bound.
    std::size_t first_settled = n;
    for (std::size_t i = n - 1; i >= 1; --i) {
        const double rate = std::abs(trace.values[i] - trace.values[i - 1]) /
                            (trace.times[i] - trace.times[i - 1]);
        if (rate >= eps_rate) break;
        first_settled = i;
        if (i == 1) break;
    }
    if (first_settled == n)
        throw SolverError("saturation_detect: no plateau found; extend the trace or raise "
                          "the rate threshold");
    return trace.times[first_settled - 1];
}

EntropyTrace run_local_quench(const QuenchSpec& spec) {
    if (spec.sites < 4 || spec.sites % 2 != 0)
        throw DomainError("run_local_quench: need an even chain of at least 4 sites");
    const int half = spec.sites / 2;
    const bool ring = spec.geometry == JoinGeometry::Ring;

    chain::ChainHamiltonian h_half, h_full;
    std::string model;
    if (spec.model == QuenchModel::XxxProxy) {
        h_half = chain::heisenberg_proxy(half, false);
        h_full = chain::heisenberg_proxy(spec.sites, ring);
        model = "xxx-proxy";
    } else {
        const auto rep = chain::boson_spin_operators(1.0, 2.0, spec.n_max);
        const auto local = chain::local_hamiltonian_s_minus1(rep);
        h_half = chain::assemble_chain(local, half, false);
        h_full = chain::assemble_chain(local, spec.sites, ring);
        std::ostringstream os;
        os << "s-minus1(n_max=" << spec.n_max << ",pole_sectors=" << local.pole_sectors
           << ",artifact_sectors=" << local.artifact_sectors << ")";
        model = os.str();
    }
    const StateVector psi0 = joined_initial_state(h_half, h_half, spec.ground);

    EntropyTrace trace;
    trace.sites = spec.sites;
    trace.cut = (spec.cut >= 0) ? spec.cut : half;
    trace.model = model;
    trace.protocol = ring ? "join-ring" : "join-open";
    trace.times = spec.times;
    const auto states = evolve(h_full, psi0, spec.times, spec.evolve);
    trace.values.reserve(states.size());
    for (const auto& st : states) trace.values.push_back(entanglement_entropy(st, trace.cut));
    return trace;
}

Eigen::MatrixXcd local_spin_operator(int sites, int site, OseeOperator kind) {
    if (site < 0 || site >= sites)
        throw DomainError("local_spin_operator: site out of range");
    if (kind == OseeOperator::SzProjector) return local_sz_projector(sites, site);
    const std::size_t dim = ipow(2, sites);
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                 static_cast<Eigen::Index>(dim));
    const std::size_t bit = std::size_t(1) << (sites - 1 - site);
    for (std::size_t i = 0; i < dim; ++i) {
        const Eigen::Index ii = static_cast<Eigen::Index>(i);
        if (kind == OseeOperator::Sz)
            op(ii, ii) = (i & bit) ? -0.5 : 0.5;
        else  // Sx flips the site
            op(static_cast<Eigen::Index>(i ^ bit), ii) = 0.5;
    }
    return op;
}

EntropyTrace run_osee_trace(const OseeSpec& spec) {
    const auto h = chain::heisenberg_proxy(spec.sites, spec.periodic);
    OperatorEvolver evolver(h, local_spin_operator(spec.sites, spec.site, spec.op));
    EntropyTrace trace;
    trace.sites = spec.sites;
    trace.cut = spec.cut;
    trace.model = "xxx-proxy";
    trace.protocol = "osee";
    trace.times = spec.times;
    trace.values.reserve(spec.times.size());
    for (double t : spec.times)
        trace.values.push_back(osee(evolver.at_time(t), spec.cut, spec.sites, 2));
    return trace;
}

}  // namespace lsc::quench
