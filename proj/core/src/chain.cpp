#include "lsc/chain.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "lsc/errors.hpp"
#include "lsc/numerics.hpp"

namespace lsc::chain {

namespace {
constexpr std::size_t max_state_dim = std::size_t(1) << 22;
constexpr double pole_guard = 1e-6;

std::size_t pow_checked(int base, int exp) {
    std::size_t d = 1;
    for (int i = 0; i < exp; ++i) {
        if (d > max_state_dim) break;
        d *= static_cast<std::size_t>(base);
    }
    return d;
}
}  // namespace

BosonSiteRep boson_spin_operators(double kappa, double delta, int n_max) {
    if (!(kappa > 0.0) || !(delta > 0.0))
        throw DomainError("boson_spin_operators: kappa and delta must be positive");
    if (n_max < 2) throw DomainError("boson_spin_operators: n_max must be >= 2");
    BosonSiteRep rep;
    rep.n_max = n_max;
    rep.kappa = kappa;
    rep.delta = delta;
    rep.s = -2.0 / (kappa * delta);
    const int d = n_max + 1;
    rep.psi = Eigen::MatrixXd::Zero(d, d);
    for (int n = 1; n < d; ++n) rep.psi(n - 1, n) = std::sqrt(static_cast<double>(n));
    rep.psi_dag = rep.psi.transpose();
    rep.rho = Eigen::MatrixXd::Zero(d, d);
    for (int n = 0; n < d; ++n)
        rep.rho(n, n) = std::sqrt(1.0 + 0.25 * kappa * delta * n);

    const double inv_sqrt = 1.0 / std::sqrt(kappa * delta);
    const Eigen::MatrixXd up = rep.psi_dag * rep.rho;   // raises occupation
    const Eigen::MatrixXd down = rep.rho * rep.psi;     // lowers occupation
    const std::complex<double> I(0.0, 1.0);
    rep.sx = I * inv_sqrt * (up + down);
    rep.sy = std::complex<double>(inv_sqrt, 0.0) * (down - up);
    rep.sz = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 0; n < d; ++n) rep.sz(n, n) = rep.s - static_cast<double>(n);
    return rep;
}

int PairSpinDecomposition::artifact_count() const {
    int c = 0;
    for (auto f : artifact) c += f != 0;
    return c;
}

Eigen::MatrixXd PairSpinDecomposition::j_matrix() const {
    Eigen::VectorXd vals = j_values;
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        if (artifact[static_cast<std::size_t>(i)]) vals[i] = 0.0;
    return vectors * vals.asDiagonal() * vectors.transpose();
}

PairSpinDecomposition two_site_j(const BosonSiteRep& rep) {
    const int d = rep.dim();
    const int d2 = d * d;
    // M = 2 S . S + 2 s (s+1) built from the complex generators; the result
    // is real symmetric (Sx (x) Sx = -A (x) A with A Hermitian, etc.).
    Eigen::MatrixXcd m_c = Eigen::MatrixXcd::Zero(d2, d2);
    auto kron = [d, d2](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
        Eigen::MatrixXcd out(d2, d2);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                out.block(i * d, j * d, d, d) = a(i, j) * b;
        return out;
    };
    m_c += kron(rep.sx, rep.sx);
    m_c += kron(rep.sy, rep.sy);
    m_c += kron(rep.sz, rep.sz);
    m_c *= 2.0;
    const double casimir = 2.0 * rep.s * (rep.s + 1.0);
    m_c += casimir * Eigen::MatrixXcd::Identity(d2, d2);
    if (m_c.imag().cwiseAbs().maxCoeff() > 1e-10)
        throw SolverError("two_site_j: pair Casimir is not real");
    Eigen::MatrixXd m = m_c.real();
    m = 0.5 * (m + m.transpose().eval());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success)
        throw SolverError("two_site_j: eigensolver failed");

    PairSpinDecomposition dec;
    dec.site_dim = d;
    dec.vectors = es.eigenvectors();
    dec.m_values = es.eigenvalues();
    dec.j_values.resize(d2);
    dec.artifact.assign(static_cast<std::size_t>(d2), 0);
    int good = 0;
    for (int i = 0; i < d2; ++i) {
        const double disc = dec.m_values[i] + 0.25;
        if (disc < 0.0) {
            dec.artifact[static_cast<std::size_t>(i)] = 1;
            dec.j_values[i] = -0.5;
        } else {
            dec.j_values[i] = -0.5 - std::sqrt(disc);
            ++good;
        }
    }
    if (good == 0)
        throw SolverError("two_site_j: every pair-spin eigenvalue is a truncation "
                          "artifact; increase n_max");
    return dec;
}

namespace {

bool near_nonpositive_integer(double x) {
    if (x > pole_guard) return false;
    return std::abs(x - std::round(x)) < pole_guard;
}

}  // namespace

TwoSiteOperator local_hamiltonian_s_minus1(const PairSpinDecomposition& dec,
                                           PoleHandling handling) {
    const int d2 = static_cast<int>(dec.m_values.size());
    Eigen::VectorXd h_vals = Eigen::VectorXd::Zero(d2);
    TwoSiteOperator op;
    op.site_dim = dec.site_dim;
    op.handling = handling;
    const double psi2 = num::digamma(2.0);
    for (int i = 0; i < d2; ++i) {
        if (dec.artifact[static_cast<std::size_t>(i)]) {
            ++op.artifact_sectors;
            continue;
        }
        const double j = dec.j_values[i];
        const bool pole = near_nonpositive_integer(-j) || near_nonpositive_integer(j + 1.0);
        if (pole) ++op.pole_sectors;
        if (handling == PoleHandling::Regularize) {
            // 2 [psi(-J) - psi(2)]: the principal value of psi at its pole
            // -m is psi(m+1), so on the discrete series this equals the
            // symmetric digamma form with the pair vacuum shifted to zero.
            h_vals[i] = 2.0 * (num::digamma(-j) - psi2);
        } else {
            if (pole) continue;  // projected out
            h_vals[i] = num::digamma(-j) + num::digamma(j + 1.0) - 2.0 * num::digamma(1.0);
        }
    }
    op.mat = dec.vectors * h_vals.asDiagonal() * dec.vectors.transpose();
    op.mat = 0.5 * (op.mat + op.mat.transpose().eval());
    return op;
}

TwoSiteOperator local_hamiltonian_s_minus1(const BosonSiteRep& rep, PoleHandling handling) {
    return local_hamiltonian_s_minus1(two_site_j(rep), handling);
}

std::size_t ChainHamiltonian::dim() const {
    return pow_checked(local_dim, sites);
}

namespace {

void check_dim(const ChainHamiltonian& h, const char* what) {
    const std::size_t d = h.dim();
    if (d > max_state_dim) {
        std::ostringstream os;
        os << what << ": state dimension " << h.local_dim << "^" << h.sites
           << " exceeds the memory budget (max " << max_state_dim << " basis states, ~"
           << (max_state_dim * 16) / (1024 * 1024) << " MiB per state vector)";
        throw DomainError(os.str());
    }
}

template <typename Scalar>
void apply_generic(const ChainHamiltonian& h, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x,
                   Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& y) {
    const std::size_t dim = h.dim();
    const int d = h.local_dim;
    y.setZero(static_cast<Eigen::Index>(dim));
    const int nb = h.bond_count();
    for (int b = 0; b < nb; ++b) {
        const int a_site = b;
        const int b_site = (b + 1) % h.sites;
        std::size_t stride_a = 1, stride_b = 1;
        for (int s = h.sites - 1; s > a_site; --s) stride_a *= d;
        for (int s = h.sites - 1; s > b_site; --s) stride_b *= d;
        for (std::size_t i = 0; i < dim; ++i) {
            const int sa = static_cast<int>((i / stride_a) % d);
            const int sb = static_cast<int>((i / stride_b) % d);
            const std::size_t base = i - sa * stride_a - sb * stride_b;
            const int col = sa * d + sb;
            const Scalar xi = x[static_cast<Eigen::Index>(i)];
            for (int ta = 0; ta < d; ++ta) {
                for (int tb = 0; tb < d; ++tb) {
                    const double v = h.bond(ta * d + tb, col);
                    if (v == 0.0) continue;
                    y[static_cast<Eigen::Index>(base + ta * stride_a + tb * stride_b)] += v * xi;
                }
            }
        }
    }
}

// Spin-1/2 XXX fast path: diagonal SzSz - 1/4 plus 1/2 spin flips, bitwise.
template <typename Scalar>
void apply_xxx(const ChainHamiltonian& h, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x,
               Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& y) {
    const std::size_t dim = h.dim();
    const int L = h.sites;
    y.setZero(static_cast<Eigen::Index>(dim));
    const int nb = h.bond_count();
    for (int b = 0; b < nb; ++b) {
        const int site_a = b;
        const int site_b = (b + 1) % L;
        const std::size_t bit_a = std::size_t(1) << (L - 1 - site_a);
        const std::size_t bit_b = std::size_t(1) << (L - 1 - site_b);
        for (std::size_t i = 0; i < dim; ++i) {
            const bool za = (i & bit_a) != 0;
            const bool zb = (i & bit_b) != 0;
            if (za == zb) continue;  // aligned: SzSz - 1/4 = 0
            y[static_cast<Eigen::Index>(i)] -= 0.5 * x[static_cast<Eigen::Index>(i)];
            y[static_cast<Eigen::Index>(i ^ bit_a ^ bit_b)] +=
                0.5 * x[static_cast<Eigen::Index>(i)];
        }
    }
}

}  // namespace

void ChainHamiltonian::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
    if (static_cast<std::size_t>(x.size()) != dim())
        throw DomainError("ChainHamiltonian::apply: dimension mismatch");
    if (kind == Kind::XxxProxy)
        apply_xxx(*this, x, y);
    else
        apply_generic(*this, x, y);
}

void ChainHamiltonian::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    if (static_cast<std::size_t>(x.size()) != dim())
        throw DomainError("ChainHamiltonian::apply: dimension mismatch");
    if (kind == Kind::XxxProxy)
        apply_xxx(*this, x, y);
    else
        apply_generic(*this, x, y);
}

Eigen::MatrixXd ChainHamiltonian::dense() const {
    const std::size_t d = dim();
    if (d > 16384)
        throw DomainError("ChainHamiltonian::dense: dimension too large for a dense matrix");
    Eigen::MatrixXd out(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    Eigen::VectorXd col(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) {
        e[static_cast<Eigen::Index>(j)] = 1.0;
        apply(e, col);
        out.col(static_cast<Eigen::Index>(j)) = col;
        e[static_cast<Eigen::Index>(j)] = 0.0;
    }
    return out;
}

std::vector<std::tuple<std::int64_t, std::int64_t, double>> ChainHamiltonian::triplets() const {
    const std::size_t d = dim();
    if (d > 1 << 16)
        throw DomainError("ChainHamiltonian::triplets: dimension too large for export");
    std::vector<std::tuple<std::int64_t, std::int64_t, double>> out;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    Eigen::VectorXd col(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) {
        e[static_cast<Eigen::Index>(j)] = 1.0;
        apply(e, col);
        for (std::size_t i = 0; i < d; ++i) {
            const double v = col[static_cast<Eigen::Index>(i)];
            if (v != 0.0)
                out.emplace_back(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), v);
        }
        e[static_cast<Eigen::Index>(j)] = 0.0;
    }
    return out;
}

ChainHamiltonian heisenberg_proxy(int L, bool periodic) {
    if (L < 1) throw DomainError("heisenberg_proxy: need L >= 1");
    if (periodic && L < 2) throw DomainError("heisenberg_proxy: periodic needs L >= 2");
    ChainHamiltonian h;
    h.sites = L;
    h.local_dim = 2;
    h.periodic = periodic;
    h.kind = ChainHamiltonian::Kind::XxxProxy;
    check_dim(h, "heisenberg_proxy");
    // Bond operator S.S - 1/4 in the (up,down)^2 basis, kept for export and
    // oracles; apply() uses the bitwise path.
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(4, 4);
    b(1, 1) = -0.5;
    b(2, 2) = -0.5;
    b(1, 2) = 0.5;
    b(2, 1) = 0.5;
    h.bond = b;
    return h;
}

ChainHamiltonian assemble_chain(const Eigen::MatrixXd& bond, int local_dim, int L,
                                bool periodic) {
    if (L < 2) throw DomainError("assemble_chain: need L >= 2");
    if (bond.rows() != bond.cols() ||
        bond.rows() != static_cast<Eigen::Index>(local_dim) * local_dim)
        throw DomainError("assemble_chain: bond operator dimension mismatch");
    ChainHamiltonian h;
    h.sites = L;
    h.local_dim = local_dim;
    h.periodic = periodic;
    h.kind = ChainHamiltonian::Kind::GenericBond;
    h.bond = bond;
    check_dim(h, "assemble_chain");
    return h;
}

ChainHamiltonian assemble_chain(const TwoSiteOperator& local, int L, bool periodic) {
    return assemble_chain(local.mat, local.site_dim, L, periodic);
}

}  // namespace lsc::chain
