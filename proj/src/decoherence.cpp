#include "talbot/decoherence.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "talbot/constants.hpp"
#include "talbot/core.hpp"
#include "talbot/errors.hpp"
#include "talbot/specialfn.hpp"

namespace talbot {

using std::numbers::pi;

namespace {

// Composite Gauss-Legendre quadrature with panel-doubling refinement.
// Interior nodes only, so kernels that are discontinuous exactly at the
// interval boundary (the fully resolving limit) integrate cleanly.
constexpr int kGlOrder = 24;

struct GlRule {
  double x[kGlOrder];
  double w[kGlOrder];
  GlRule() {
    for (int i = 0; i < (kGlOrder + 1) / 2; ++i) {
      double z = std::cos(pi * (i + 0.75) / (kGlOrder + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < kGlOrder; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        pp = kGlOrder * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / pp;
        z -= dz;
        if (std::abs(dz) < 1e-15) break;
      }
      x[i] = -z;
      x[kGlOrder - 1 - i] = z;
      w[i] = w[kGlOrder - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
  }
};

const GlRule& gl_rule() {
  static const GlRule rule;
  return rule;
}

template <typename F>
double gl_panels(const F& f, double a, double b, int panels) {
  const GlRule& r = gl_rule();
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    double s = 0.0;
    for (int i = 0; i < kGlOrder; ++i) s += r.w[i] * f(lo + 0.5 * h * (r.x[i] + 1.0));
    sum += 0.5 * h * s;
  }
  return sum;
}

template <typename F>
double integrate_adaptive(const F& f, double a, double b, double rel_tol) {
  double prev = gl_panels(f, a, b, 2);
  for (int panels = 4; panels <= 16384; panels *= 2) {
    const double cur = gl_panels(f, a, b, panels);
    if (std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-300) + 1e-300)
      return cur;
    prev = cur;
  }
  throw accuracy_error("decoherence quadrature did not converge");
}

}  // namespace

double reduction_factor(const DecoherenceChannel& channel, int n, double mass,
                        double period, double T, double rel_tol) {
  if (T <= 0.0) throw std::domain_error("reduction_factor: T must be positive");
  if (n == 0) return 1.0;  // kappa(0) = 1 by contract
  const double T_T = talbot_time(mass, period);
  const double scale = std::abs(n) * period / T_T;
  const auto integrand = [&](double t) {
    return channel.rate(t) * (1.0 - channel.kernel(scale * (T - std::abs(t))));
  };
  const double expo = integrate_adaptive(integrand, -T, T, rel_tol);
  return std::exp(-std::max(0.0, expo));
}

FringeSignal apply_channels(const FringeSignal& signal,
                            std::span<const DecoherenceChannel> channels, double mass,
                            double T) {
  FringeSignal out = signal;
  for (int l = 1; l <= out.order; ++l) {
    double factor = 1.0;
    for (const auto& ch : channels) factor *= reduction_factor(ch, l, mass, out.period, T);
    out.ref(l) = signal.amp(l) * factor;
    out.ref(-l) = signal.amp(-l) * factor;  // symmetric kernels: R_{-l} = R_l
  }
  return out;
}

ThermalEmission thermal_emission_rate(const std::function<double(double)>& sigma_abs_fn,
                                      double t_internal) {
  if (t_internal <= 0.0)
    throw std::domain_error("thermal_emission_rate: internal temperature must be positive");
  const auto& k = constants;
  const double w_th = k.kB * t_internal / k.hbar;
  const double w_lo = w_th / 100.0, w_hi = 100.0 * w_th;
  const int N = 4000;  // log grid over four decades

  // gamma(w) = (w / pi c)^2 sigma(w) exp(-hbar w / kB T); trapezoid in ln w.
  std::vector<double> omega(N), gw(N);
  const double dlog = std::log(w_hi / w_lo) / (N - 1);
  for (int i = 0; i < N; ++i) {
    const double w = w_lo * std::exp(dlog * i);
    const double sig = sigma_abs_fn(w);
    if (sig < 0.0) throw std::domain_error("thermal_emission_rate: negative cross-section");
    omega[static_cast<std::size_t>(i)] = w;
    gw[static_cast<std::size_t>(i)] =
        (w / (pi * k.c)) * (w / (pi * k.c)) * sig * std::exp(-w / w_th);
  }
  double rate = 0.0;
  std::vector<double> wt(N);
  for (int i = 0; i < N; ++i) {
    const double trap = (i == 0 || i == N - 1) ? 0.5 : 1.0;
    wt[static_cast<std::size_t>(i)] =
        trap * gw[static_cast<std::size_t>(i)] * omega[static_cast<std::size_t>(i)] * dlog;
    rate += wt[static_cast<std::size_t>(i)];
  }
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw std::domain_error("thermal_emission_rate: emission integral is not positive/finite");
  // Divergence guard: the grid must capture the spectral cutoff.
  if (gw[N - 1] * omega[N - 1] > 1e-6 * rate)
    throw std::domain_error("thermal_emission_rate: cross-section grows too fast; integral diverges");

  ThermalEmission result;
  result.total_rate = rate;
  const double c_light = k.c;
  result.kernel = [omega = std::move(omega), wt = std::move(wt), rate,
                   c_light](double s) {
    // kappa(s) = (1/Gamma) int dw gamma(w) sinc(w s / c); exact 1 at s = 0.
    double acc = 0.0;
    for (std::size_t i = 0; i < omega.size(); ++i)
      acc += wt[i] * specialfn::sinc(omega[i] * s / c_light);
    return acc / rate;
  };
  return result;
}

DecoherenceChannel thermal_emission_channel(
    const std::function<double(double)>& sigma_abs_fn, double t_internal) {
  ThermalEmission e = thermal_emission_rate(sigma_abs_fn, t_internal);
  DecoherenceChannel ch;
  const double rate = e.total_rate;
  ch.rate = [rate](double) { return rate; };
  ch.kernel = std::move(e.kernel);
  ch.label = "thermal_emission";
  return ch;
}

DecoherenceChannel collisional_channel(double pressure, double sigma_eff,
                                       const GasParams& gas) {
  if (pressure < 0.0 || sigma_eff < 0.0)
    throw std::domain_error("collisional_channel: negative pressure or cross-section");
  if (gas.temperature <= 0.0 || gas.mass <= 0.0)
    throw std::domain_error("collisional_channel: invalid gas parameters");
  const auto& k = constants;
  const double n_gas = pressure / (k.kB * gas.temperature);
  const double v_mean = std::sqrt(8.0 * k.kB * gas.temperature / (pi * gas.mass));
  const double rate = n_gas * sigma_eff * v_mean;
  DecoherenceChannel ch;
  ch.rate = [rate](double) { return rate; };
  // Fully resolving: a single collision reveals the path at the grating scale.
  ch.kernel = [](double s) { return s == 0.0 ? 1.0 : 0.0; };
  ch.label = "collisional";
  return ch;
}

namespace {

// 1 - (sqrt(pi)/x) erf(x/2) with a series guard for small x.
double csl_bracket(double x) {
  if (std::abs(x) < 1e-4) return x * x / 12.0;
  return 1.0 - std::sqrt(pi) / x * specialfn::erf(0.5 * x);
}

}  // namespace

double csl_visibility_factor(const CslParams& params, double mass, double period,
                             double T, double T_T) {
  if (params.lambda_csl < 0.0 || params.r_c <= 0.0)
    throw std::domain_error("csl_visibility_factor: invalid CSL parameters");
  if (mass <= 0.0 || period <= 0.0 || T < 0.0 || T_T <= 0.0)
    throw std::domain_error("csl_visibility_factor: invalid arguments");
  if (T == 0.0) return 1.0;
  const double m_u = mass / constants.amu;
  const double x = period * T / (params.r_c * T_T);
  return std::exp(-2.0 * m_u * m_u * params.lambda_csl * T * csl_bracket(x));
}

DecoherenceChannel csl_as_channel(const CslParams& params, double mass) {
  if (params.lambda_csl < 0.0 || params.r_c <= 0.0 || mass <= 0.0)
    throw std::domain_error("csl_as_channel: invalid parameters");
  const double m_u = mass / constants.amu;
  const double rate = m_u * m_u * params.lambda_csl;
  const double rc2 = params.r_c * params.r_c;
  DecoherenceChannel ch;
  ch.rate = [rate](double) { return rate; };
  // Gaussian momentum transfer of width hbar / (sqrt(2) r_c).
  ch.kernel = [rc2](double s) { return std::exp(-s * s / (4.0 * rc2)); };
  ch.label = "csl";
  return ch;
}

double csl_exclusion_bound(double observed_visibility, double predicted_visibility,
                           double mass, double period, double T, double T_T, double r_c) {
  if (observed_visibility <= 0.0)
    throw std::domain_error("csl_exclusion_bound: observed visibility must be positive");
  if (predicted_visibility <= 0.0 || predicted_visibility > 1.0)
    throw std::domain_error("csl_exclusion_bound: predicted visibility out of range");
  if (observed_visibility > predicted_visibility)
    return std::numeric_limits<double>::infinity();
  const double m_u = mass / constants.amu;
  const double x = period * T / (r_c * T_T);
  const double denom = 2.0 * m_u * m_u * T * csl_bracket(x);
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  if (observed_visibility == predicted_visibility)
    return -std::log(0.95) / denom;  // default 5% contrast-loss threshold
  return std::log(predicted_visibility / observed_visibility) / denom;
}

}  // namespace talbot
