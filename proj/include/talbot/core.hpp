#pragma once

#include <vector>

#include "talbot/types.hpp"

namespace talbot {

/// One node of a discretized velocity distribution; weights sum to 1.
struct VelocityNode {
  double v;
  double weight;
};

/// Talbot time T_T = m d^2 / h.
double talbot_time(double mass, double period);

/// Talbot length L_T = m v d^2 / h = d^2 / lambda_dB.
double talbot_length(double mass, double velocity, double period);

/// de Broglie wavelength h / (m v).
double de_broglie_wavelength(double mass, double velocity);

/// Deterministic quadrature nodes for averaging over a velocity
/// distribution. Gaussian distributions use Gauss-Legendre nodes on
/// [v0 - 4 sigma, v0 + 4 sigma] clipped to v > 0; weights are
/// renormalized to sum to one.
std::vector<VelocityNode> velocity_quadrature(const VelocityDist& dist, int n_points);

}  // namespace talbot
