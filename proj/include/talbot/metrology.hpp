#pragma once

#include <array>
#include <complex>
#include <span>

#include "talbot/signal.hpp"
#include "talbot/types.hpp"

namespace talbot {

/// Electrostatic deflection stage: (E.grad)E_x, electrode length s and
/// drift distance l to the third grating.
struct DeflectionField {
  double field_gradient_product = 0.0;  ///< [V^2/m^3]
  double electrode_length = 0.0;        ///< s [m]
  double drift_distance = 0.0;          ///< l [m]
};

/// Fringe shift chi (E.grad)E_x / (m v_z^2) * s (s/2 + l).
double deflection_shift(double susceptibility, const DeflectionField& field,
                        double mass, double v_z);

/// Electric susceptibility chi = alpha_stat + <d_x^2> / (kB T).
double susceptibility(double alpha_stat, double dipole_sq_mean, double temperature);

/// Coriolis phase 4 pi s.(v x Omega) T^2 / d; s must be a unit vector.
double coriolis_phase(const std::array<double, 3>& s_normal,
                      const std::array<double, 3>& velocity,
                      const std::array<double, 3>& omega, double T, double period);

/// Free-fall distance g T^2 / 2.
double gravity_fall(double t_total);

/// Clausius-Mossotti polarizability 4 pi eps0 R^3 (eps - 1)/(eps + 2).
std::complex<double> nanosphere_polarizability(double radius,
                                               std::complex<double> permittivity);

struct VisibilityDataPoint {
  double power = 0.0;  ///< P_L [W]
  double v_sin = 0.0;
};

struct SearchBox {
  double alpha_min = 0.0, alpha_max = 0.0;  ///< [C m^2/V]
  double sigma_min = 0.0, sigma_max = 0.0;  ///< [m^2]
  bool sigma_fixed() const { return sigma_min == sigma_max; }
};

struct FitResult {
  double alpha_opt = 0.0;
  double sigma_abs = 0.0;
  double alpha_halfwidth = 0.0;  ///< approximate, from the local curvature
  double sigma_halfwidth = 0.0;
  double residual_norm = 0.0;
  int iterations = 0;
  bool boundary_warning = false;
};

/// Forward model for visibility-vs-power data: velocity-averaged KDTLI
/// contrast where absorption in the middle grating enters as a Poissonian
/// depletion factor with n0 = 2 beta phi0 (documented model stand-in).
/// With sigma = 0 this is bit-identical to the pure phase-grating formula.
struct KdtliPowerModel {
  InterferometerConfig config;  // kdtli geometry (d, L, f1, f3)
  KdtliLaser laser;             // waist; power comes from the data axis
  ParticleSpec particle;        // mass and velocity distribution
  int velocity_nodes = 32;

  double vsin(double power, double alpha, double sigma) const;
};

/// Deterministic two-stage least-squares fit of (alpha, sigma) to a
/// measured visibility-vs-power curve: 64x64 coarse grid over the search
/// box, then Nelder-Mead refinement with fixed coefficients.
FitResult fit_visibility_curve(std::span<const VisibilityDataPoint> data,
                               const KdtliPowerModel& model, const SearchBox& box);

}  // namespace talbot
