#pragma once

#include <array>
#include <utility>
#include <vector>

namespace talbot {

/// Longitudinal velocity distribution of the particle beam [m/s].
struct VelocityDist {
  enum class Kind { delta, gaussian, tabulated };

  Kind kind = Kind::delta;
  double v0 = 0.0;    // mean velocity (delta, gaussian)
  double fwhm = 0.0;  // full width at half maximum (gaussian)
  std::vector<std::pair<double, double>> table;  // (velocity, weight)

  static VelocityDist delta(double v0);
  static VelocityDist gaussian(double v0, double fwhm);
  static VelocityDist tabulated(std::vector<std::pair<double, double>> table);

  void validate() const;  // throws std::domain_error
};

/// Species parameters of the interfering particle.
struct ParticleSpec {
  double mass = 0.0;            ///< [kg]
  double alpha_opt = 0.0;       ///< optical polarizability at the grating wavelength [C m^2/V]
  double sigma_abs = 0.0;       ///< absorption cross-section at the grating wavelength [m^2]
  double alpha_stat = 0.0;      ///< static polarizability [C m^2/V]
  double dipole_sq_mean = 0.0;  ///< thermally averaged squared dipole component [C^2 m^2]
  VelocityDist velocity_dist;

  void validate() const;
};

/// One grating: an absorptive mask, a standing-wave phase grating, or a
/// pulsed photo-depletion grating.
struct GratingSpec {
  enum class Kind { material_mask, phase, ionizing };

  Kind kind = Kind::material_mask;
  double period = 0.0;         ///< d [m]
  double open_fraction = 0.0;  ///< f = s/d, masks only
  double phi0 = 0.0;           ///< peak eikonal phase, optical gratings
  double n0 = 0.0;             ///< mean photon number at the antinode, ionizing gratings

  static GratingSpec material_mask(double period, double open_fraction);
  static GratingSpec phase(double period, double phi0);
  static GratingSpec ionizing(double period, double phi0, double n0);

  void validate() const;
};

enum class Scheme { tl, kdtli, otima };

/// Grating separation, as a length (stationary beam) or a pulse delay.
struct Separation {
  enum class Kind { length, time };
  Kind kind = Kind::length;
  double value = 0.0;  // [m] or [s]

  static Separation length(double L) { return {Kind::length, L}; }
  static Separation time(double T) { return {Kind::time, T}; }
};

/// Three-grating interferometer geometry with equal periods and equal
/// separations between neighbouring gratings.
struct InterferometerConfig {
  Scheme scheme = Scheme::tl;
  std::array<GratingSpec, 3> gratings;
  Separation separation;
  double acceleration = 0.0;  ///< along the grating axis [m/s^2]
  int fourier_order = 5;      ///< truncation of the fringe Fourier sum

  double period() const { return gratings[0].period; }
  void validate() const;  // throws config_error
};

}  // namespace talbot
