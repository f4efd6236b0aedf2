#pragma once

#include <functional>
#include <span>
#include <string>

#include "talbot/signal.hpp"

namespace talbot {

/// One decoherence process: an event rate over the traversal interval and
/// the characteristic function of its momentum-transfer distribution,
/// kappa(s) = int d^3q g(q) exp(i q_x s / hbar). All provided kernels are
/// symmetric in q_x, so kappa is real with kappa(0) = 1 and |kappa| <= 1.
struct DecoherenceChannel {
  std::function<double(double)> rate;    ///< Gamma(t) [1/s], t in [-T, T]
  std::function<double(double)> kernel;  ///< kappa(s), s [m]
  std::string label;
};

struct CslParams {
  double lambda_csl = 0.0;  ///< [1/s]
  double r_c = 0.0;         ///< localization length [m]
};

/// Reduction of the n-th fringe harmonic,
/// R_n = exp{ -int_{-T}^{T} dt Gamma(t) [1 - kappa(n d (T - |t|) / T_T)] },
/// by adaptive quadrature.
double reduction_factor(const DecoherenceChannel& channel, int n, double mass,
                        double period, double T, double rel_tol = 1e-12);

/// Multiply every harmonic S_l by the product of the channels' R_l.
/// S_0 is unchanged.
FringeSignal apply_channels(const FringeSignal& signal,
                            std::span<const DecoherenceChannel> channels,
                            double mass, double T);

struct ThermalEmission {
  double total_rate = 0.0;               ///< Gamma [1/s]
  std::function<double(double)> kernel;  ///< kappa(s)
};

/// Thermal photon emission of a particle much hotter than its environment.
/// Spectral rate (omega/pi c)^2 sigma_abs(omega) exp(-hbar omega / kB T_int),
/// integrated on a logarithmic frequency grid; the kernel is the isotropic
/// photon-recoil characteristic function.
ThermalEmission thermal_emission_rate(const std::function<double(double)>& sigma_abs_fn,
                                      double t_internal);

/// Channel wrapper around thermal_emission_rate.
DecoherenceChannel thermal_emission_channel(const std::function<double(double)>& sigma_abs_fn,
                                            double t_internal);

struct GasParams {
  double temperature = 0.0;  ///< [K]
  double mass = 0.0;         ///< gas particle mass [kg]
};

/// Collisions with residual gas: constant rate Gamma = n_gas sigma_eff v_mean
/// with a fully resolving kernel (kappa = 0 for s != 0) -- every collision
/// reveals the path at the grating scale.
DecoherenceChannel collisional_channel(double pressure, double sigma_eff,
                                       const GasParams& gas);

/// Closed-form CSL contrast factor
/// exp{ -2 (m/u)^2 lambda T [1 - (sqrt(pi) r_c T_T / d T) erf(d T / 2 r_c T_T)] }.
double csl_visibility_factor(const CslParams& params, double mass, double period,
                             double T, double T_T);

/// CSL as an equivalent decoherence channel: constant rate (m/u)^2 lambda
/// with Gaussian kernel kappa(s) = exp(-s^2 / 4 r_c^2).
DecoherenceChannel csl_as_channel(const CslParams& params, double mass);

/// Upper bound on lambda_CSL from an observed vs predicted visibility.
/// observed == predicted reports the lambda producing a 5% contrast loss;
/// observed > predicted returns +infinity.
double csl_exclusion_bound(double observed_visibility, double predicted_visibility,
                           double mass, double period, double T, double T_T,
                           double r_c);

}  // namespace talbot
