#include "talbot/gratings.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"
#include "talbot/specialfn.hpp"

namespace talbot {

using specialfn::bessel_i_complex;
using specialfn::bessel_j;
using specialfn::sinc;
using std::numbers::pi;

FourierCoeffs mask_fourier(double open_fraction, int order_max) {
  if (open_fraction <= 0.0 || open_fraction >= 1.0)
    throw std::domain_error("mask_fourier: open fraction must lie in (0, 1)");
  if (order_max < 1) throw std::domain_error("mask_fourier: order_max must be >= 1");
  FourierCoeffs c(order_max);
  for (int n = -order_max; n <= order_max; ++n)
    c.ref(n) = open_fraction * sinc(pi * n * open_fraction);
  return c;
}

double kdtli_phi0(const ParticleSpec& particle, double laser_power, double waist_y,
                  double v_z) {
  if (laser_power < 0.0 || waist_y <= 0.0 || v_z <= 0.0)
    throw std::domain_error("kdtli_phi0: non-positive laser or beam parameter");
  const auto& k = constants;
  return 4.0 * std::sqrt(2.0 * pi) * particle.alpha_opt * laser_power /
         (k.h * k.c * k.eps0 * waist_y * v_z);
}

PulseParams otima_pulse_params(const ParticleSpec& particle, double pulse_energy,
                               double spot_profile_peak, double wavelength) {
  if (pulse_energy < 0.0 || spot_profile_peak <= 0.0 || wavelength <= 0.0)
    throw std::domain_error("otima_pulse_params: non-positive pulse parameter");
  const auto& k = constants;
  // The phase follows the eikonal form; the photon number is the antinode
  // fluence times the absorption cross-section, which keeps
  // beta = n0 / (2 phi0) = sigma eps0 lambda / (2 pi alpha) consistent.
  const double phi0 =
      4.0 * pi * particle.alpha_opt * pulse_energy * spot_profile_peak / (k.h * k.c * k.eps0);
  const double n0 =
      4.0 * particle.sigma_abs * pulse_energy * wavelength * spot_profile_peak / (k.h * k.c);
  return {phi0, n0};
}

double beta_parameter(const ParticleSpec& particle, double wavelength) {
  if (particle.alpha_opt == 0.0)
    throw std::domain_error("beta_parameter: degenerate particle with zero polarizability");
  return particle.sigma_abs * constants.eps0 * wavelength / (2.0 * pi * particle.alpha_opt);
}

FourierCoeffs phase_grating_bn(double phi0, int order_max) {
  if (order_max < 1) throw std::domain_error("phase_grating_bn: order_max must be >= 1");
  FourierCoeffs c(order_max);
  const std::complex<double> pref = std::exp(std::complex<double>(0.0, -phi0 / 2.0));
  const std::complex<double> i_unit(0.0, 1.0);
  for (int n = -order_max; n <= order_max; ++n)
    c.ref(n) = std::pow(i_unit, n) * pref * bessel_j(n, phi0 / 2.0);
  return c;
}

FourierCoeffs ionizing_grating_bn(double phi0, double n0, int order_max) {
  if (n0 < 0.0) throw std::domain_error("ionizing_grating_bn: n0 must be >= 0");
  if (order_max < 1) throw std::domain_error("ionizing_grating_bn: order_max must be >= 1");
  FourierCoeffs c(order_max);
  const std::complex<double> z(-n0 / 4.0, phi0 / 2.0);
  const std::complex<double> pref = std::exp(z);
  for (int n = -order_max; n <= order_max; ++n) c.ref(n) = pref * bessel_i_complex(n, z);
  return c;
}

double absorption_probability(int k, double x, double n0, double period) {
  if (k < 0 || n0 < 0.0 || period <= 0.0)
    throw std::domain_error("absorption_probability: invalid argument");
  const double c = std::cos(pi * x / period);  // lambda = 2 d
  const double n = n0 * c * c;
  double p = std::exp(-n);
  for (int j = 1; j <= k; ++j) p *= n / j;
  return p;
}

int default_order_max(double phi0, double n0) {
  const int m = static_cast<int>(std::ceil(2.0 * (std::abs(phi0) + n0))) + 6;
  return std::max(8, m);
}

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Entire function I_n(w)/w^n of y = w^2: series for moderate |y|, Bessel
// evaluation otherwise (y > 0 -> I_n, y < 0 -> J_n).
double bessel_ratio_entire(int n, double y) {
  if (std::abs(y) <= 36.0) {
    double t = 1.0 / (std::pow(2.0, n) * factorial(n));
    double sum = t;
    for (int k = 1; k < 200; ++k) {
      t *= 0.25 * y / (static_cast<double>(k) * (n + k));
      sum += t;
      if (std::abs(t) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum;
  }
  if (y > 0.0) {
    const double w = std::sqrt(y);
    return specialfn::bessel_i(n, w) / std::pow(w, n);
  }
  const double w = std::sqrt(-y);
  // I_n(iw)/(iw)^n = J_n(w)/w^n
  return bessel_j(n, w) / std::pow(w, n);
}

// Closed Talbot coefficients of an ionizing grating, derived from the
// Bessel addition theorem in a branch-free arrangement:
//   B_n(xi) = e^{-n0/2} (zc - zi)^n * I_n(C)/C^n,   C^2 = zi^2 - zc^2,
// with zc = phi0 sin(pi xi), zi = (n0/2) cos(pi xi). I_n(C)/C^n is entire
// in C^2, so no square-root or sign convention enters. For n < 0 the
// algebraic identity C^2 = -(zc - zi)(zc + zi) turns the prefactor into
// (-(zc + zi))^{|n|}.
double ionizing_closed(int n, double xi, double phi0, double n0) {
  const double zc = phi0 * std::sin(pi * xi);
  const double zi = 0.5 * n0 * std::cos(pi * xi);
  const int m = std::abs(n);
  const double base = (n >= 0) ? (zc - zi) : -(zc + zi);
  return std::exp(-0.5 * n0) * std::pow(base, m) * bessel_ratio_entire(m, zi * zi - zc * zc);
}

// Exact quantum Talbot coefficients of a centered-slit mask from the
// overlap of the two slit trains shifted by +-xi/2 (the Fourier-summed
// form of the coefficient autocorrelation):
//   B_n(xi) = sum_{m: |xi - m| < f} (-1)^{n m} L_m sinc(pi n L_m),
//   L_m = f - |xi - m|.
double mask_closed(int n, double xi, double f) {
  double sum = 0.0;
  const auto m0 = static_cast<long long>(std::floor(xi));
  for (long long m = m0 - 1; m <= m0 + 2; ++m) {
    const double L = f - std::abs(xi - static_cast<double>(m));
    if (L <= 0.0) continue;
    const bool neg = (n % 2 != 0) && (m % 2 != 0);
    const double term = L * sinc(pi * n * L);
    sum += neg ? -term : term;
  }
  return sum;
}

}  // namespace

std::complex<double> ionizing_talbot_coeff(double phi0, double n0, int n, double xi) {
  return {ionizing_closed(n, xi, phi0, n0), 0.0};
}

std::complex<double> ionizing_classical_coeff_closed(double phi0, double n0, int n, double xi) {
  // Substitution zeta_coh -> phi0 pi xi, zeta_ion -> n0/2 in the same
  // branch-free arrangement as the quantum closed form.
  const double zc = phi0 * pi * xi;
  const double zi = 0.5 * n0;
  const int m = std::abs(n);
  const double base = (n >= 0) ? (zc - zi) : -(zc + zi);
  return {std::exp(-0.5 * n0) * std::pow(base, m) * bessel_ratio_entire(m, zi * zi - zc * zc),
          0.0};
}

TalbotCoeffFn talbot_coeff_quantum(const GratingSpec& spec) {
  spec.validate();
  TalbotCoeffFn fn;
  fn.label = TalbotCoeffFn::Label::quantum;
  fn.spec = spec;
  switch (spec.kind) {
    case GratingSpec::Kind::phase: {
      const double phi0 = spec.phi0;
      fn.eval = [phi0](int n, double xi) -> std::complex<double> {
        return {bessel_j(n, phi0 * std::sin(pi * xi)), 0.0};
      };
      break;
    }
    case GratingSpec::Kind::ionizing: {
      const double phi0 = spec.phi0, n0 = spec.n0;
      // Fallback table for the (rare) case of a non-finite closed-form
      // value; the direct sum over the b_j is authoritative there.
      const int jmax = default_order_max(phi0, n0) + 8;
      auto coeffs = std::make_shared<FourierCoeffs>(ionizing_grating_bn(phi0, n0, jmax));
      fn.eval = [phi0, n0, coeffs](int n, double xi) -> std::complex<double> {
        const double v = ionizing_closed(n, xi, phi0, n0);
        if (std::isfinite(v)) return {v, 0.0};
        return talbot_coeff_direct(*coeffs).eval(n, xi);
      };
      break;
    }
    case GratingSpec::Kind::material_mask: {
      const double f = spec.open_fraction;
      fn.eval = [f](int n, double xi) -> std::complex<double> {
        return {mask_closed(n, xi, f), 0.0};
      };
      break;
    }
  }
  return fn;
}

TalbotCoeffFn talbot_coeff_direct(const FourierCoeffs& coeffs) {
  // Tail check: the truncation must already be negligible.
  const double tail = std::max(std::abs(coeffs.at(coeffs.order_max)),
                               std::abs(coeffs.at(-coeffs.order_max)));
  if (tail > 1e-10)
    throw accuracy_error("talbot_coeff_direct: coefficient tail above 1e-10; raise order_max");
  TalbotCoeffFn fn;
  fn.label = TalbotCoeffFn::Label::quantum;
  auto c = std::make_shared<FourierCoeffs>(coeffs);
  fn.eval = [c](int n, double xi) {
    std::complex<double> sum{0.0, 0.0};
    for (int j = -c->order_max; j <= c->order_max; ++j) {
      const std::complex<double> prod = c->at(j) * std::conj(c->at(j - n));
      if (prod == std::complex<double>{0.0, 0.0}) continue;
      const double arg = pi * (n - 2 * j) * xi;
      sum += prod * std::complex<double>{std::cos(arg), std::sin(arg)};
    }
    return sum;
  };
  return fn;
}

namespace {

// One period of the classical coefficient integrand, trapezoid rule on a
// uniform grid (spectrally accurate for these smooth periodic integrands).
std::complex<double> classical_quad(int n, double xi, double phi0, double n0, int N) {
  std::complex<double> sum{0.0, 0.0};
  for (int k = 0; k < N; ++k) {
    const double u = static_cast<double>(k) / N;
    const double cu = std::cos(pi * u);
    const double w = (n0 != 0.0) ? std::exp(-n0 * cu * cu) : 1.0;
    // d phi/du = -phi0 pi sin(2 pi u); exponent -2 pi i n u - i xi dphi/du
    const double arg = -2.0 * pi * n * u + xi * phi0 * pi * std::sin(2.0 * pi * u);
    sum += w * std::complex<double>{std::cos(arg), std::sin(arg)};
  }
  return sum / static_cast<double>(N);
}

std::complex<double> classical_refined(int n, double xi, double phi0, double n0, int N0) {
  std::complex<double> a = classical_quad(n, xi, phi0, n0, N0);
  std::complex<double> b = classical_quad(n, xi, phi0, n0, 2 * N0);
  if (std::abs(b - a) <= 1e-7 * std::max(1.0, std::abs(b))) return b;
  std::complex<double> c = classical_quad(n, xi, phi0, n0, 4 * N0);
  if (std::abs(c - b) <= 1e-7 * std::max(1.0, std::abs(c))) return c;
  throw accuracy_error("talbot_coeff_classical: quadrature did not converge");
}

}  // namespace

TalbotCoeffFn talbot_coeff_classical(const GratingSpec& spec, int quadrature_points) {
  spec.validate();
  if (quadrature_points < 256)
    throw std::domain_error("talbot_coeff_classical: need at least 256 quadrature points");
  TalbotCoeffFn fn;
  fn.label = TalbotCoeffFn::Label::classical;
  fn.spec = spec;
  switch (spec.kind) {
    case GratingSpec::Kind::material_mask: {
      // No eikonal phase: C_n(xi) = A_n, independent of xi.
      const double f = spec.open_fraction;
      fn.eval = [f](int n, double /*xi*/) -> std::complex<double> {
        return {f * sinc(pi * n * f), 0.0};
      };
      break;
    }
    case GratingSpec::Kind::phase: {
      const double phi0 = spec.phi0;
      const int N = quadrature_points;
      fn.eval = [phi0, N](int n, double xi) {
        return classical_refined(n, xi, phi0, 0.0, N);
      };
      break;
    }
    case GratingSpec::Kind::ionizing: {
      const double phi0 = spec.phi0, n0 = spec.n0;
      const int N = quadrature_points;
      fn.eval = [phi0, n0, N](int n, double xi) {
        return classical_refined(n, xi, phi0, n0, N);
      };
      break;
    }
  }
  return fn;
}

}  // namespace talbot
