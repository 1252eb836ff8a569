#include "lsc/scaling.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lsc/bethe.hpp"
#include "lsc/errors.hpp"

namespace lsc::scaling {

namespace {
constexpr double pi = std::numbers::pi;
}

ScalingSeries ground_energy_series(double h, const std::vector<int>& L_list,
                                   const SeriesOptions& opts) {
    if (L_list.empty()) throw DomainError("ground_energy_series: empty L list");
    for (std::size_t i = 0; i + 1 < L_list.size(); ++i)
        if (L_list[i] >= L_list[i + 1])
            throw DomainError("ground_energy_series: L list must be strictly increasing");
    for (int L : L_list)
        if (L < 2 || L % 2 != 0)
            throw DomainError("ground_energy_series: chain lengths must be even and >= 2");

    ScalingSeries series;
    series.h = h;
    series.thermo = thermo::compute_thermo(h, opts.fermi);

    bethe::SolveOptions bopts;
    bopts.tol = opts.bethe_tol;

    for (int L : L_list) {
        const double n_target = series.thermo.n_density * L;
        const int n0 = static_cast<int>(std::llround(n_target));
        bool have = false;
        SeriesEntry best;
        std::ostringstream failures;
        for (int dn = -opts.candidate_span; dn <= opts.candidate_span; ++dn) {
            const int N = n0 + dn;
            if (N < 1) continue;
            try {
                const auto qn = bethe::dominant_state_quantum_numbers(L, N);
                const auto params = bethe::ModelParams::holomorphic_qcd(L, N);
                const auto st = bethe::solve_bethe(params, qn, std::nullopt, bopts);
                const double eg = bethe::grand_energy(st, h);
                // Stationary point of E - hN at the top of the spectrum: keep
                // the maximizer.
                if (!have || eg > best.e_grand) {
                    best.L = L;
                    best.N = N;
                    best.e_grand = eg;
                    best.delta_n = N - n_target;
                    best.d_sea = 0.0;
                    have = true;
                }
            } catch (const std::exception& e) {
                failures << " [N=" << N << ": " << e.what() << "]";
            }
        }
        if (!have) {
            std::ostringstream os;
            os << "ground_energy_series: no convergent filling at L=" << L
               << failures.str();
            throw SolverError(os.str());
        }
        series.entries.push_back(best);
    }
    return series;
}

CentralChargeEstimate extract_central_charge(const ScalingSeries& series,
                                             const FitOptions& opts) {
    std::vector<SeriesEntry> pts;
    for (const auto& e : series.entries) {
        if (opts.l_min > 0 && e.L < opts.l_min) continue;
        if (opts.l_max > 0 && e.L > opts.l_max) continue;
        pts.push_back(e);
    }
    if (pts.size() < 4)
        throw DomainError("extract_central_charge: need at least 4 points in the fit window");

    const double v = series.thermo.v_fermi;
    const double xi = series.thermo.xi;
    const double eps_inf = series.thermo.eps_inf;

    const int m = static_cast<int>(pts.size());
    int p = opts.with_l2_term ? 2 : 1;
    const int extra = opts.eps_inf_from_thermo ? 0 : 1;
    p += extra;
    Eigen::MatrixXd X(m, p);
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) {
        const double L = pts[i].L;
        double yi = pts[i].e_grand;
        if (opts.eps_inf_from_thermo) yi -= eps_inf * L;
        if (opts.quantization_correction) {
            const double dn = pts[i].delta_n;
            // The dominant sea has negative N-curvature: add the quadratic
            // term back so the universal 1/L coefficient is unpolluted.
            yi += (2.0 * pi * v / L) * (dn / (2.0 * xi)) * (dn / (2.0 * xi));
        }
        y[i] = yi;
        int col = 0;
        if (!opts.eps_inf_from_thermo) X(i, col++) = L;
        X(i, col++) = pi * v / (6.0 * L);
        if (opts.with_l2_term) X(i, col++) = 1.0 / (L * L);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < p)
        throw SolverError("extract_central_charge: fit matrix is rank deficient; "
                          "widen the range of L");
    Eigen::VectorXd beta = qr.solve(y);
    Eigen::VectorXd r = y - X * beta;

    const int c_col = opts.eps_inf_from_thermo ? 0 : 1;
    CentralChargeEstimate est;
    est.c = beta[c_col];
    est.a2 = opts.with_l2_term ? beta[p - 1] : 0.0;
    est.fit_window = {pts.front().L, pts.back().L};
    est.residuals.assign(r.data(), r.data() + m);
    est.quantization_corrected = opts.quantization_correction;
    const int dof = m - p;
    if (dof > 0) {
        const double sigma2 = r.squaredNorm() / dof;
        Eigen::MatrixXd xtx_inv = (X.transpose() * X).inverse();
        est.stderr_c = std::sqrt(std::max(0.0, sigma2 * xtx_inv(c_col, c_col)));
    }
    return est;
}

}  // namespace lsc::scaling
