#pragma once

#include <numbers>

namespace talbot {

/// Physical constants in SI units (CODATA 2018; h, c, kB exact by definition).
struct PhysicalConstants {
  double h = 6.62607015e-34;            ///< Planck constant [J s]
  double hbar = 6.62607015e-34 / (2.0 * std::numbers::pi);  ///< [J s]
  double c = 299792458.0;               ///< speed of light [m/s]
  double eps0 = 8.8541878128e-12;       ///< vacuum permittivity [F/m]
  double kB = 1.380649e-23;             ///< Boltzmann constant [J/K]
  double amu = 1.66053906660e-27;       ///< atomic mass unit [kg]
  double g_earth = 9.80665;             ///< standard gravity [m/s^2]
  double omega_earth = 7.2921150e-5;    ///< Earth rotation rate [rad/s]
};

inline constexpr PhysicalConstants constants{};

}  // namespace talbot
