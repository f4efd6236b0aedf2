#include "talbot/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "talbot/constants.hpp"
#include "talbot/core.hpp"
#include "talbot/errors.hpp"
#include "talbot/specialfn.hpp"

namespace talbot {

using specialfn::bessel_i;
using specialfn::bessel_j;
using specialfn::sinc;
using std::numbers::pi;

namespace {

std::complex<double> phase_factor(double arg) {
  return {std::cos(arg), std::sin(arg)};
}

double flight_time(const InterferometerConfig& config, double velocity_or_time) {
  if (velocity_or_time <= 0.0)
    throw std::domain_error("fringe signal: velocity or time must be positive");
  if (config.separation.kind == Separation::Kind::length)
    return config.separation.value / velocity_or_time;
  return velocity_or_time;
}

}  // namespace

FringeSignal tl_fringe(const InterferometerConfig& config, double mass,
                       double velocity_or_time, Mode mode) {
  config.validate();
  const double d = config.period();
  const double T = flight_time(config, velocity_or_time);
  const double T_T = talbot_time(mass, d);
  const double aT2 = config.acceleration * T * T;

  const TalbotCoeffFn a1 = talbot_coeff_quantum(config.gratings[0]);
  const TalbotCoeffFn a3 = talbot_coeff_quantum(config.gratings[2]);
  const TalbotCoeffFn b2 = (mode == Mode::quantum)
                               ? talbot_coeff_quantum(config.gratings[1])
                               : talbot_coeff_classical(config.gratings[1]);

  FringeSignal s;
  s.period = d;
  s.scheme = config.scheme;
  s.order = config.fourier_order;
  s.amplitudes.assign(static_cast<std::size_t>(2 * s.order + 1), {0.0, 0.0});
  for (int l = -s.order; l <= s.order; ++l) {
    const std::complex<double> amp =
        a1(-l, 0.0) * a3(-l, 0.0) * b2(2 * l, l * T / T_T) * phase_factor(-2.0 * pi * l * aT2 / d);
    s.ref(l) = amp;
  }
  return s;
}

double evaluate(const FringeSignal& signal, double x_s) {
  return evaluate_phase(signal, 2.0 * pi * x_s / signal.period);
}

double evaluate_phase(const FringeSignal& signal, double phase) {
  double v = signal.amp(0).real();
  for (int l = 1; l <= signal.order; ++l)
    v += 2.0 * (signal.amp(l) * phase_factor(l * phase)).real();
  return v;
}

FringeSignal shift_fringe(const FringeSignal& signal, double dx) {
  FringeSignal out = signal;
  for (int l = -out.order; l <= out.order; ++l)
    out.ref(l) = signal.amp(l) * phase_factor(2.0 * pi * l * dx / signal.period);
  return out;
}

VisibilityResult visibility(const FringeSignal& signal) {
  const double s0 = signal.amp(0).real();
  if (s0 <= 0.0) throw std::domain_error("visibility: degenerate signal with S_0 <= 0");

  VisibilityResult r;
  r.v_sin = 2.0 * std::abs(signal.amp(1)) / s0;
  r.phase = std::arg(signal.amp(1));

  // Dense scan over one period, then parabolic refinement of the extrema.
  const int N = 2048;
  double vmax = -1e300, vmin = 1e300;
  int imax = 0, imin = 0;
  std::vector<double> vals(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double v = evaluate(signal, signal.period * i / N);
    vals[static_cast<std::size_t>(i)] = v;
    if (v > vmax) { vmax = v; imax = i; }
    if (v < vmin) { vmin = v; imin = i; }
  }
  auto refine = [&](int i0) {
    const double ym = vals[static_cast<std::size_t>((i0 + N - 1) % N)];
    const double y0 = vals[static_cast<std::size_t>(i0)];
    const double yp = vals[static_cast<std::size_t>((i0 + 1) % N)];
    const double denom = ym - 2.0 * y0 + yp;
    if (denom == 0.0) return y0;
    const double dx = 0.5 * (ym - yp) / denom;  // in grid units
    return evaluate(signal, signal.period * (i0 + dx) / N);
  };
  vmax = std::max(vmax, refine(imax));
  vmin = std::min(vmin, refine(imin));
  r.v_full = (vmax + vmin != 0.0) ? (vmax - vmin) / (vmax + vmin) : 0.0;
  return r;
}

FringeSignal kdtli_fringe_averaged(const InterferometerConfig& config,
                                   const ParticleSpec& particle, const KdtliLaser& laser,
                                   Mode mode, int n_velocity_nodes) {
  config.validate();
  if (config.scheme != Scheme::kdtli)
    throw config_error("kdtli_fringe_averaged: scheme must be KDTLI");
  particle.validate();

  const double d = config.period();
  const double L = config.separation.value;
  const double f1 = config.gratings[0].open_fraction;
  const double f3 = config.gratings[2].open_fraction;
  const auto nodes = velocity_quadrature(particle.velocity_dist, n_velocity_nodes);

  FringeSignal s;
  s.period = d;
  s.scheme = Scheme::kdtli;
  s.order = config.fourier_order;
  s.amplitudes.assign(static_cast<std::size_t>(2 * s.order + 1), {0.0, 0.0});

  for (int l = -s.order; l <= s.order; ++l) {
    std::complex<double> avg{0.0, 0.0};
    for (const auto& node : nodes) {
      const double phi0 = kdtli_phi0(particle, laser.power, laser.waist_y, node.v);
      const double LT = talbot_length(particle.mass, node.v, d);
      const double zeta = (mode == Mode::quantum) ? phi0 * std::sin(pi * l * L / LT)
                                                  : phi0 * pi * l * L / LT;
      const double T = L / node.v;
      const double aT2 = config.acceleration * T * T;
      avg += node.weight * bessel_j(2 * l, zeta) * phase_factor(-2.0 * pi * l * aT2 / d);
    }
    s.ref(l) = f1 * sinc(pi * l * f1) * f3 * sinc(pi * l * f3) * avg;
  }
  return s;
}

VisibilityResult kdtli_visibility(const InterferometerConfig& config,
                                  const ParticleSpec& particle, const KdtliLaser& laser,
                                  Mode mode, int n_velocity_nodes) {
  return visibility(kdtli_fringe_averaged(config, particle, laser, mode, n_velocity_nodes));
}

namespace {

// One real amplitude of the OTIMA product form at order l >= 0. The ratio
// power and the Bessel factor are combined exactly as printed, with the
// negative radicand handled through J_{2l}(i y) = (-1)^l I_{2l}(y). Near
// the zeta_coh + zeta_ion = 0 line the printed ratio degenerates; there the
// evaluation falls back to the branch-free grating form.
double otima_amplitude(int l, double xi, const PulseParams& g1, const PulseParams& g2,
                       const PulseParams& g3, Mode mode) {
  const double outer = std::exp(-0.5 * (g1.n0 + g3.n0)) * bessel_i(l, 0.5 * g1.n0) *
                       bessel_i(l, 0.5 * g3.n0);
  if (l == 0) return outer * ionizing_talbot_coeff(g2.phi0, g2.n0, 0, 0.0).real();

  if (mode == Mode::classical)
    return outer * ionizing_classical_coeff_closed(g2.phi0, g2.n0, 2 * l, xi).real();

  const double zc = g2.phi0 * std::sin(pi * xi);
  const double zi = 0.5 * g2.n0 * std::cos(pi * xi);
  if (zc == 0.0 && zi == 0.0) return 0.0;  // middle grating off; harmonics vanish
  const double v = zc + zi;
  if (std::abs(v) < 1e-9 * (std::abs(zc) + std::abs(zi)))
    return outer * ionizing_talbot_coeff(g2.phi0, g2.n0, 2 * l, xi).real();
  const double ratio = (zc - zi) / v;
  const double y = zc * zc - zi * zi;
  const double bess = (y >= 0.0)
                          ? bessel_j(2 * l, std::sqrt(y))
                          : ((l % 2 == 0) ? 1.0 : -1.0) * bessel_i(2 * l, std::sqrt(-y));
  const double val = std::exp(-0.5 * g2.n0) * std::pow(ratio, l) * bess;
  if (!std::isfinite(val))
    return outer * ionizing_talbot_coeff(g2.phi0, g2.n0, 2 * l, xi).real();
  return outer * val;
}

}  // namespace

FringeSignal otima_signal_params(const InterferometerConfig& config, double mass,
                                 const std::array<PulseParams, 3>& params, Mode mode) {
  config.validate();
  if (config.scheme != Scheme::otima)
    throw config_error("otima_signal_params: scheme must be OTIMA");
  const double d = config.period();
  const double T = config.separation.value;
  const double T_T = talbot_time(mass, d);
  const double aT2 = config.acceleration * T * T;

  FringeSignal s;
  s.period = d;
  s.scheme = Scheme::otima;
  s.order = config.fourier_order;
  s.amplitudes.assign(static_cast<std::size_t>(2 * s.order + 1), {0.0, 0.0});
  for (int l = 0; l <= s.order; ++l) {
    const double r = otima_amplitude(l, l * T / T_T, params[0], params[1], params[2], mode);
    const std::complex<double> ph = phase_factor(-2.0 * pi * l * aT2 / d);
    s.ref(l) = r * ph;
    if (l > 0) s.ref(-l) = r * std::conj(ph);
  }
  return s;
}

FringeSignal otima_signal(const InterferometerConfig& config, const ParticleSpec& particle,
                          const OtimaPulses& pulses) {
  particle.validate();
  const double lambda = 2.0 * config.period();
  std::array<PulseParams, 3> params{};
  for (int k = 0; k < 3; ++k)
    params[static_cast<std::size_t>(k)] = otima_pulse_params(
        particle, pulses.pulse_energies[static_cast<std::size_t>(k)],
        pulses.spot_profile_peak, lambda);
  return otima_signal_params(config, particle.mass, params, Mode::quantum);
}

std::vector<MassScanPoint> otima_mass_scan_params(const InterferometerConfig& config,
                                                  std::span<const double> masses,
                                                  const std::array<PulseParams, 3>& params,
                                                  double x_s, Mode mode) {
  std::vector<MassScanPoint> out;
  out.reserve(masses.size());
  for (const double m : masses) {
    if (m <= 0.0) throw std::domain_error("otima_mass_scan: masses must be positive");
    const FringeSignal s = otima_signal_params(config, m, params, mode);
    MassScanPoint p;
    p.mass = m;
    const double s0 = s.amp(0).real();
    p.v_sin = (s0 > 0.0) ? 2.0 * std::abs(s.amp(1)) / s0 : 0.0;
    const double sr = evaluate(s, x_s);
    p.delta_sn = (s0 > 0.0) ? (sr - s0) / s0 : 0.0;
    out.push_back(p);
  }
  return out;
}

std::vector<MassScanPoint> otima_mass_scan(const InterferometerConfig& config,
                                           const ParticleSpec& particle_template,
                                           std::span<const double> masses,
                                           const OtimaPulses& pulses, double x_s, Mode mode) {
  particle_template.validate();
  const double lambda = 2.0 * config.period();
  std::array<PulseParams, 3> params{};
  for (int k = 0; k < 3; ++k)
    params[static_cast<std::size_t>(k)] = otima_pulse_params(
        particle_template, pulses.pulse_energies[static_cast<std::size_t>(k)],
        pulses.spot_profile_peak, lambda);
  return otima_mass_scan_params(config, masses, params, x_s, mode);
}

double timing_imbalance_envelope(double divergence, double velocity, double period,
                                 double dt) {
  if (divergence < 0.0 || velocity <= 0.0 || period <= 0.0)
    throw std::domain_error("timing_imbalance_envelope: invalid argument");
  const double arg = 2.0 * pi * velocity * std::tan(divergence) * dt / period;
  return std::abs(sinc(arg));
}

double tilt_scan_shift(double height, double tilt) {
  if (height < 0.0 || tilt < 0.0)
    throw std::domain_error("tilt_scan_shift: height and tilt must be non-negative");
  const double s = std::sin(0.5 * tilt);
  return 2.0 * height * s * s;  // h (1 - cos theta)
}

double total_fringe_phase(double dx1, double dx2, double dx3, double period) {
  return 2.0 * pi / period * (dx1 - 2.0 * dx2 + dx3);
}

}  // namespace talbot
