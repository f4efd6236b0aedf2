#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "talbot/types.hpp"

namespace talbot {

/// Truncated set of complex Fourier amplitudes, indexed n = -order_max .. +order_max.
struct FourierCoeffs {
  int order_max = 0;
  std::vector<std::complex<double>> values;  // index n + order_max

  explicit FourierCoeffs(int order_max_)
      : order_max(order_max_), values(2 * order_max_ + 1) {}

  /// Coefficient b_n; zero outside the stored range.
  std::complex<double> at(int n) const {
    if (n < -order_max || n > order_max) return {0.0, 0.0};
    return values[static_cast<std::size_t>(n + order_max)];
  }
  std::complex<double>& ref(int n) {
    return values[static_cast<std::size_t>(n + order_max)];
  }
};

/// Talbot coefficients B_n(xi) (quantum) or C_n(xi) (classical) of one grating.
/// Immutable after construction; evaluation is pure.
struct TalbotCoeffFn {
  enum class Label { quantum, classical };

  Label label = Label::quantum;
  std::optional<GratingSpec> spec;  // absent for coefficient-set inputs
  std::function<std::complex<double>(int, double)> eval;

  std::complex<double> operator()(int n, double xi) const { return eval(n, xi); }
};

/// Fourier coefficients A_n = f sinc(pi n f) of a centered-slit mask.
FourierCoeffs mask_fourier(double open_fraction, int order_max = 8);

/// Peak phase phi0 = 4 sqrt(2 pi) alpha P_L / (h c eps0 w_y v_z) imprinted
/// by a cw standing-wave grating with Gaussian profile of waist w_y.
double kdtli_phi0(const ParticleSpec& particle, double laser_power,
                  double waist_y, double v_z);

/// Modulation parameters of one ionizing grating pulse.
struct PulseParams {
  double phi0;
  double n0;
};

/// Phase and mean antinode photon number of a pulsed standing-wave grating:
/// phi0 = 4 pi alpha E_L f00 / (h c eps0), n0 = 4 sigma_abs E_L lambda f00 / (h c).
PulseParams otima_pulse_params(const ParticleSpec& particle, double pulse_energy,
                               double spot_profile_peak, double wavelength);

/// Absorption-to-phase ratio beta = n0 / (2 phi0) = sigma_abs eps0 lambda / (2 pi alpha).
double beta_parameter(const ParticleSpec& particle, double wavelength);

/// b_n = i^n exp(-i phi0/2) J_n(phi0/2) for a pure standing-wave phase grating.
FourierCoeffs phase_grating_bn(double phi0, int order_max);

/// b_n = exp(i phi0/2 - n0/4) I_n(i phi0/2 - n0/4) for an ionizing grating pulse.
FourierCoeffs ionizing_grating_bn(double phi0, double n0, int order_max);

/// Poisson probability of absorbing k photons at position x in a standing
/// wave of period d = lambda/2: P_k = e^{-n(x)} n(x)^k / k!, n(x) = n0 cos^2(pi x / d).
double absorption_probability(int k, double x, double n0, double period);

/// Default truncation order for laser-grating Fourier sums.
int default_order_max(double phi0, double n0);

/// Closed-form quantum Talbot coefficient of an ionizing grating,
/// B_n(xi) for zeta_coh = phi0 sin(pi xi) and zeta_ion = (n0/2) cos(pi xi),
/// evaluated through an entire-function arrangement of the Bessel
/// addition theorem (branch-free). phi0 = 0 reduces to the pure
/// absorptive mask, n0 = 0 to the phase-grating form J_n(zeta_coh).
std::complex<double> ionizing_talbot_coeff(double phi0, double n0, int n, double xi);

/// Classical counterpart of the laser-grating coefficients via the
/// substitution zeta_coh -> phi0 pi xi, zeta_ion -> n0/2. Closed form;
/// the quadrature route talbot_coeff_classical is the general engine and
/// this expression doubles as its cross-check.
std::complex<double> ionizing_classical_coeff_closed(double phi0, double n0, int n, double xi);

/// Quantum Talbot coefficients of a grating. Laser gratings use the
/// closed Bessel forms; masks use the exact slit-overlap integral.
TalbotCoeffFn talbot_coeff_quantum(const GratingSpec& spec);

/// Talbot coefficients by direct summation over a coefficient set:
/// B_n(xi) = sum_j b_j b*_{j-n} exp[i pi (n - 2j) xi].
/// Serves as the brute-force cross-check for the closed forms.
TalbotCoeffFn talbot_coeff_direct(const FourierCoeffs& coeffs);

/// Classical (ballistic) Talbot coefficients: periodic quadrature of
/// C_n(xi) = (1/d) int dx |t(x)|^2 exp[-2 pi i n x/d - i xi d phi'(x)].
/// Masks carry no eikonal phase and evaluate exactly.
TalbotCoeffFn talbot_coeff_classical(const GratingSpec& spec, int quadrature_points = 512);

}  // namespace talbot
