#include "lsc/dis.hpp"

#include <cmath>

#include "lsc/errors.hpp"

namespace lsc::dis {

void DISKinematics::validate() const {
    if (!(m > 0.0)) throw DomainError("DISKinematics: target mass must be positive");
    if (!(x > 0.0 && x < 1.0)) throw DomainError("DISKinematics: Bjorken x must be in (0,1)");
    if (!(q > 0.0)) throw DomainError("DISKinematics: momentum transfer must be positive");
}

DISPrediction probe_geometry(const DISKinematics& k) {
    k.validate();
    DISPrediction p;
    p.ell = 1.0 / (k.m * k.x);
    p.radius = 1.0 / k.q;
    p.tau = 1.0 / k.m;
    p.t_c = p.ell;
    return p;
}

double to_femtometers(double gev_inverse) {
    return gev_inverse * hbar_c_gev_fm;
}

double entropy_at_x(double c, double x) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("entropy_at_x: Bjorken x must be in (0,1)");
    return (c / 3.0) * std::log(1.0 / x);
}

double entropy_vs_time(double c, double m, double t, double x) {
    if (!(m > 0.0)) throw DomainError("entropy_vs_time: mass must be positive");
    if (!(x > 0.0 && x < 1.0)) throw DomainError("entropy_vs_time: Bjorken x must be in (0,1)");
    if (t < 1.0 / m)
        throw DomainError("entropy_vs_time: t below the pre-quench time 1/m");
    const double t_c = 1.0 / (m * x);
    if (t >= t_c) return entropy_at_x(c, x);
    return (c / 3.0) * std::log(m * t);
}

double structure_function_exponent(double c) {
    if (!(c > 0.0)) throw DomainError("structure_function_exponent: c must be positive");
    return c / 3.0;
}

}  // namespace lsc::dis
