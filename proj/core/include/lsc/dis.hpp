#pragma once

namespace lsc::dis {

/// hbar c in GeV fm, pinned once for every unit conversion.
inline constexpr double hbar_c_gev_fm = 0.1973269804;

/// Deep-inelastic-scattering kinematics in natural units (GeV).
struct DISKinematics {
    double m = 0.938;  ///< target mass
    double x = 0.01;   ///< Bjorken x, 0 < x < 1
    double q = 1.0;    ///< momentum transfer Q

    void validate() const;
};

/// Probe geometry and entanglement observables, lengths/times in GeV^-1.
struct DISPrediction {
    double ell = 0.0;      ///< probed longitudinal length 1/(m x)
    double radius = 0.0;   ///< transverse tube radius 1/Q
    double tau = 0.0;      ///< characteristic time 1/m (Compton wavelength)
    double t_c = 0.0;      ///< saturation time 1/(m x) = ell
    double entropy = 0.0;  ///< nats
    double delta = 0.0;    ///< structure-function exponent c/3
};

/// Geometry fields only: ell = t_c = 1/(m x), radius = 1/Q, tau = 1/m.
DISPrediction probe_geometry(const DISKinematics& k);

/// GeV^-1 -> femtometers.
double to_femtometers(double gev_inverse);

/// Saturated block entropy S = (c/3) ln(1/x); the probed length over the UV
/// cutoff is ell/eps_UV = 1/x.
double entropy_at_x(double c, double x);

/// Time-dependent entropy S(t) = (c/3) ln(m t) on tau <= t <= t_c, held at
/// the saturated value (c/3) ln(1/x) past the critical time t_c = 1/(m x)
/// (hard-plateau matching; the two branches agree at t_c).
double entropy_vs_time(double c, double m, double t, double x);

/// Structure-function growth exponent: x G(x) ~ x^{-delta} with delta = c/3.
double structure_function_exponent(double c);

/// Reference experimental small-x exponent quoted for comparison.
inline constexpr double delta_experimental = 0.3;

}  // namespace lsc::dis
