#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "talbot/gratings.hpp"
#include "talbot/types.hpp"

namespace talbot {

enum class Mode { quantum, classical };

/// Fringe signal behind the third grating as a truncated Fourier sum
/// over the lateral shift x_s: S(x_s) = sum_l S_l exp(2 pi i l x_s / d).
struct FringeSignal {
  double period = 0.0;
  Scheme scheme = Scheme::tl;
  int order = 0;  // L; amplitudes hold l = -L..L
  std::vector<std::complex<double>> amplitudes;

  std::complex<double> amp(int l) const {
    if (l < -order || l > order) return {0.0, 0.0};
    return amplitudes[static_cast<std::size_t>(l + order)];
  }
  std::complex<double>& ref(int l) {
    return amplitudes[static_cast<std::size_t>(l + order)];
  }
};

struct VisibilityResult {
  double v_full = 0.0;  ///< (max - min)/(max + min) of the scanned signal
  double v_sin = 0.0;   ///< 2 |S_1| / S_0
  double phase = 0.0;   ///< fringe phase arg(S_1) [rad]
};

/// Three-grating fringe amplitudes
/// S_l = A^(1)_{-l} A^(3)_{-l} B^(2)_{2l}(l T / T_T) exp(-2 pi i l a T^2 / d).
/// For stationary schemes the third argument is the longitudinal velocity
/// (T = L / v); for the pulsed scheme it is the pulse delay T itself.
/// Classical mode swaps the middle grating's coefficients for C_n.
FringeSignal tl_fringe(const InterferometerConfig& config, double mass,
                       double velocity_or_time, Mode mode = Mode::quantum);

/// Evaluate the fringe signal at lateral shift x_s [m].
double evaluate(const FringeSignal& signal, double x_s);

/// Evaluate at a fringe phase phi (x_s = phi d / 2 pi):
/// S_0 + 2 sum_l Re(S_l e^{i l phi}).
double evaluate_phase(const FringeSignal& signal, double phase);

/// Translate the fringe pattern by dx (pure phase on the harmonics).
FringeSignal shift_fringe(const FringeSignal& signal, double dx);

/// Visibility of a fringe signal; v_full from a dense scan of evaluate().
VisibilityResult visibility(const FringeSignal& signal);

/// Standing-wave laser parameters of the KDTLI middle grating.
struct KdtliLaser {
  double power = 0.0;    ///< P_L [W]
  double waist_y = 0.0;  ///< w_y [m]
};

/// Velocity-averaged KDTLI fringe amplitudes: phi0 and L_T are evaluated
/// per velocity node and the complex amplitudes are averaged (not the
/// visibilities). Classical mode replaces sin(pi L / L_T) by pi L / L_T.
FringeSignal kdtli_fringe_averaged(const InterferometerConfig& config,
                                   const ParticleSpec& particle,
                                   const KdtliLaser& laser, Mode mode = Mode::quantum,
                                   int n_velocity_nodes = 32);

/// Velocity-averaged KDTLI visibility.
VisibilityResult kdtli_visibility(const InterferometerConfig& config,
                                  const ParticleSpec& particle,
                                  const KdtliLaser& laser, Mode mode = Mode::quantum,
                                  int n_velocity_nodes = 32);

/// Pulse energies and spot profile of the three ionizing gratings.
struct OtimaPulses {
  std::array<double, 3> pulse_energies{};  ///< E_L per grating [J]
  double spot_profile_peak = 0.0;          ///< f(0,0) [1/m^2]
};

/// OTIMA fringe amplitudes from the closed product form
/// S_l = e^{-(n1+n2+n3)/2} I_l(n1/2) I_l(n3/2) B-part(2l, l T/T_T) e^{...},
/// with grating parameters derived per pulse energy.
FringeSignal otima_signal(const InterferometerConfig& config,
                          const ParticleSpec& particle, const OtimaPulses& pulses);

/// Same signal from explicit per-grating modulation parameters.
FringeSignal otima_signal_params(const InterferometerConfig& config, double mass,
                                 const std::array<PulseParams, 3>& params,
                                 Mode mode = Mode::quantum);

struct MassScanPoint {
  double mass = 0.0;      ///< [kg]
  double v_sin = 0.0;
  double delta_sn = 0.0;  ///< (S_R - S_O) / S_O at the configured phase
};

/// Transmission modulation versus cluster mass at fixed pulse delay:
/// resonant signal S_R = S(x_s), off-resonant reference S_O = S_0 only.
std::vector<MassScanPoint> otima_mass_scan(const InterferometerConfig& config,
                                           const ParticleSpec& particle_template,
                                           std::span<const double> masses,
                                           const OtimaPulses& pulses, double x_s = 0.0,
                                           Mode mode = Mode::quantum);
std::vector<MassScanPoint> otima_mass_scan_params(
    const InterferometerConfig& config, std::span<const double> masses,
    const std::array<PulseParams, 3>& params, double x_s = 0.0,
    Mode mode = Mode::quantum);

/// Contrast multiplier from a pulse-timing imbalance dT averaged over a
/// beam of divergence half-angle alpha: |sinc(2 pi v tan(alpha) dT / d)|.
/// First zero at dT = d / (2 v tan(alpha)).
double timing_imbalance_envelope(double divergence, double velocity,
                                 double period, double dt);

/// Effective middle-grating shift h (1 - cos(theta)) from tilting its
/// laser beam by theta at particle-mirror distance h.
double tilt_scan_shift(double height, double tilt);

/// Total fringe phase (2 pi / d)(dx1 - 2 dx2 + dx3) of three grating shifts.
double total_fringe_phase(double dx1, double dx2, double dx3, double period);

}  // namespace talbot
