#include "talbot/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "talbot/constants.hpp"
#include "talbot/core.hpp"
#include "talbot/errors.hpp"
#include "talbot/specialfn.hpp"

namespace talbot {

using specialfn::bessel_j;
using specialfn::sinc;
using std::numbers::pi;

double deflection_shift(double susceptibility, const DeflectionField& field, double mass,
                        double v_z) {
  if (mass <= 0.0 || v_z <= 0.0)
    throw std::domain_error("deflection_shift: mass and velocity must be positive");
  if (field.electrode_length < 0.0 || field.drift_distance < 0.0)
    throw std::domain_error("deflection_shift: negative geometry");
  const double s = field.electrode_length;
  return susceptibility * field.field_gradient_product / (mass * v_z * v_z) * s *
         (0.5 * s + field.drift_distance);
}

double susceptibility(double alpha_stat, double dipole_sq_mean, double temperature) {
  if (temperature <= 0.0)
    throw std::domain_error("susceptibility: temperature must be positive");
  return alpha_stat + dipole_sq_mean / (constants.kB * temperature);
}

double coriolis_phase(const std::array<double, 3>& s_normal,
                      const std::array<double, 3>& velocity,
                      const std::array<double, 3>& omega, double T, double period) {
  const double norm = std::sqrt(s_normal[0] * s_normal[0] + s_normal[1] * s_normal[1] +
                                s_normal[2] * s_normal[2]);
  if (std::abs(norm - 1.0) > 1e-9)
    throw std::domain_error("coriolis_phase: s_normal must be a unit vector");
  if (period <= 0.0) throw std::domain_error("coriolis_phase: period must be positive");
  const double cx = velocity[1] * omega[2] - velocity[2] * omega[1];
  const double cy = velocity[2] * omega[0] - velocity[0] * omega[2];
  const double cz = velocity[0] * omega[1] - velocity[1] * omega[0];
  const double triple = s_normal[0] * cx + s_normal[1] * cy + s_normal[2] * cz;
  return 4.0 * pi * triple * T * T / period;
}

double gravity_fall(double t_total) {
  if (t_total < 0.0) throw std::domain_error("gravity_fall: time must be non-negative");
  return 0.5 * constants.g_earth * t_total * t_total;
}

std::complex<double> nanosphere_polarizability(double radius,
                                               std::complex<double> permittivity) {
  if (radius <= 0.0)
    throw std::domain_error("nanosphere_polarizability: radius must be positive");
  const std::complex<double> denom = permittivity + 2.0;
  if (std::abs(denom) < 1e-12)
    throw std::domain_error("nanosphere_polarizability: permittivity at the resonance pole");
  return 4.0 * pi * constants.eps0 * radius * radius * radius *
         (permittivity - 1.0) / denom;
}

double KdtliPowerModel::vsin(double power, double alpha, double sigma) const {
  const double d = config.period();
  const double L = config.separation.value;
  const double f1 = config.gratings[0].open_fraction;
  const double f3 = config.gratings[2].open_fraction;
  const double lambda = 2.0 * d;
  const auto& k = constants;
  const auto nodes = velocity_quadrature(particle.velocity_dist, velocity_nodes);

  double s1 = 0.0, s0 = 0.0;
  for (const auto& node : nodes) {
    const double phi0 = 4.0 * std::sqrt(2.0 * pi) * alpha * power /
                        (k.h * k.c * k.eps0 * laser.waist_y * node.v);
    const double LT = talbot_length(particle.mass, node.v, d);
    if (sigma == 0.0) {
      // Pure phase grating: identical evaluation path to the
      // velocity-averaged contrast formula.
      s1 += node.weight * bessel_j(2, phi0 * std::sin(pi * L / LT));
      s0 += node.weight;
    } else {
      // Absorption stand-in: Poissonian depletion with the running-wave
      // photon number n0 = 2 beta phi0.
      const double n0 = 4.0 * std::sqrt(2.0 * pi) * sigma * lambda * power /
                        (pi * k.h * k.c * laser.waist_y * node.v);
      s1 += node.weight * ionizing_talbot_coeff(phi0, n0, 2, L / LT).real();
      s0 += node.weight * ionizing_talbot_coeff(phi0, n0, 0, 0.0).real();
    }
  }
  if (s0 <= 0.0) return 0.0;
  return 2.0 * std::abs(sinc(pi * f1) * sinc(pi * f3) * s1) / s0;
}

namespace {

struct GridBest {
  double alpha = 0.0, sigma = 0.0, residual = 0.0;
  double alpha_step = 0.0, sigma_step = 0.0;
};

double residual_sum(std::span<const VisibilityDataPoint> data, const KdtliPowerModel& model,
                    double alpha, double sigma) {
  double r = 0.0;
  for (const auto& p : data) {
    const double diff = model.vsin(p.power, alpha, sigma) - p.v_sin;
    r += diff * diff;
  }
  return r;
}

}  // namespace

FitResult fit_visibility_curve(std::span<const VisibilityDataPoint> data,
                               const KdtliPowerModel& model, const SearchBox& box) {
  if (data.size() < 5)
    throw std::domain_error("fit_visibility_curve: need at least 5 data points");
  if (!(box.alpha_min < box.alpha_max) || box.sigma_min > box.sigma_max ||
      !std::isfinite(box.alpha_max) || !std::isfinite(box.sigma_max))
    throw std::domain_error("fit_visibility_curve: invalid search box");

  const double y0 = data[0].v_sin;
  bool all_equal = true;
  for (const auto& p : data)
    if (p.v_sin != y0) {
      all_equal = false;
      break;
    }
  if (all_equal)
    throw non_identifiable_error("fit_visibility_curve: contrast data carry no information");

  const bool fit_sigma = !box.sigma_fixed();
  const int na = 64;
  const int ns = fit_sigma ? 64 : 1;

  // Stage 1: coarse grid scan.
  GridBest best;
  best.residual = 1e300;
  double model_lo = 1e300, model_hi = -1e300;
  for (int ia = 0; ia < na; ++ia) {
    const double a = box.alpha_min + (box.alpha_max - box.alpha_min) * ia / (na - 1);
    for (int is = 0; is < ns; ++is) {
      const double sg = fit_sigma ? box.sigma_min + (box.sigma_max - box.sigma_min) * is / (ns - 1)
                                  : box.sigma_min;
      const double r = residual_sum(data, model, a, sg);
      const double m0 = model.vsin(data[data.size() / 2].power, a, sg);
      model_lo = std::min(model_lo, m0);
      model_hi = std::max(model_hi, m0);
      if (r < best.residual) {
        best = {a, sg, r, (box.alpha_max - box.alpha_min) / (na - 1),
                fit_sigma ? (box.sigma_max - box.sigma_min) / (ns - 1) : 0.0};
      }
    }
  }
  if (model_hi - model_lo == 0.0)
    throw non_identifiable_error("fit_visibility_curve: flat model landscape over the search box");

  // Stage 2: Nelder-Mead with fixed coefficients (reflect 1, expand 2,
  // contract 0.5, shrink 0.5), deterministic ordering.
  const int dim = fit_sigma ? 2 : 1;
  struct Vertex {
    double a, s, r;
  };
  auto clamp_eval = [&](double a, double sg) -> double {
    if (a < box.alpha_min || a > box.alpha_max || sg < box.sigma_min || sg > box.sigma_max)
      return 1e300;
    return residual_sum(data, model, a, sg);
  };
  std::vector<Vertex> vx;
  vx.push_back({best.alpha, best.sigma, best.residual});
  {
    const double da = (best.alpha_step != 0.0) ? best.alpha_step : 1e-3 * std::abs(best.alpha);
    double a1 = best.alpha + da;
    if (a1 > box.alpha_max) a1 = best.alpha - da;
    vx.push_back({a1, best.sigma, clamp_eval(a1, best.sigma)});
    if (fit_sigma) {
      const double dsg = (best.sigma_step != 0.0) ? best.sigma_step : 1e-3;
      double s1 = best.sigma + dsg;
      if (s1 > box.sigma_max) s1 = best.sigma - dsg;
      vx.push_back({best.alpha, s1, clamp_eval(best.alpha, s1)});
    }
  }

  int iterations = 0;
  for (; iterations < 500; ++iterations) {
    std::sort(vx.begin(), vx.end(), [](const Vertex& u, const Vertex& v) { return u.r < v.r; });
    if (vx.back().r - vx.front().r < 1e-10) break;

    // centroid of all but the worst
    double ca = 0.0, cs = 0.0;
    for (int i = 0; i < dim; ++i) {
      ca += vx[static_cast<std::size_t>(i)].a;
      cs += vx[static_cast<std::size_t>(i)].s;
    }
    ca /= dim;
    cs /= dim;
    Vertex& worst = vx.back();

    const double ra = ca + (ca - worst.a), rs = cs + (cs - worst.s);
    const double rr = clamp_eval(ra, rs);
    if (rr < vx.front().r) {
      const double ea = ca + 2.0 * (ca - worst.a), es = cs + 2.0 * (cs - worst.s);
      const double er = clamp_eval(ea, es);
      worst = (er < rr) ? Vertex{ea, es, er} : Vertex{ra, rs, rr};
    } else if (rr < vx[static_cast<std::size_t>(dim - 1)].r) {
      worst = {ra, rs, rr};
    } else {
      const double ka = ca + 0.5 * (worst.a - ca), ks = cs + 0.5 * (worst.s - cs);
      const double kr = clamp_eval(ka, ks);
      if (kr < worst.r) {
        worst = {ka, ks, kr};
      } else {
        for (std::size_t i = 1; i < vx.size(); ++i) {  // shrink toward the best
          vx[i].a = vx[0].a + 0.5 * (vx[i].a - vx[0].a);
          vx[i].s = vx[0].s + 0.5 * (vx[i].s - vx[0].s);
          vx[i].r = clamp_eval(vx[i].a, vx[i].s);
        }
      }
    }
  }
  std::sort(vx.begin(), vx.end(), [](const Vertex& u, const Vertex& v) { return u.r < v.r; });

  FitResult result;
  result.alpha_opt = vx.front().a;
  result.sigma_abs = vx.front().s;
  result.residual_norm = std::sqrt(vx.front().r);
  result.iterations = iterations;

  const double edge_a = (box.alpha_max - box.alpha_min) * 1e-3;
  result.boundary_warning = (result.alpha_opt - box.alpha_min < edge_a) ||
                            (box.alpha_max - result.alpha_opt < edge_a);
  if (fit_sigma) {
    const double edge_s = (box.sigma_max - box.sigma_min) * 1e-3;
    result.boundary_warning = result.boundary_warning ||
                              (result.sigma_abs - box.sigma_min < edge_s) ||
                              (box.sigma_max - result.sigma_abs < edge_s);
  }

  // Approximate half-widths from the local quadratic model of the residual.
  const std::size_t dof = (data.size() > static_cast<std::size_t>(dim))
                              ? data.size() - static_cast<std::size_t>(dim)
                              : 1;
  const double noise_var = vx.front().r / static_cast<double>(dof);
  auto halfwidth = [&](bool along_alpha) {
    const double step = along_alpha ? std::max(1e-4 * std::abs(result.alpha_opt), 1e-12 * (box.alpha_max - box.alpha_min))
                                    : std::max(1e-4 * std::abs(result.sigma_abs), 1e-12 * std::max(box.sigma_max - box.sigma_min, 1e-30));
    const double a = result.alpha_opt, sg = result.sigma_abs;
    const double rp = along_alpha ? residual_sum(data, model, a + step, sg)
                                  : residual_sum(data, model, a, sg + step);
    const double rm = along_alpha ? residual_sum(data, model, a - step, sg)
                                  : residual_sum(data, model, a, sg - step);
    const double h = (rp - 2.0 * vx.front().r + rm) / (step * step);
    if (h <= 0.0) return 0.0;
    return std::sqrt(2.0 * noise_var / h);
  };
  result.alpha_halfwidth = halfwidth(true);
  result.sigma_halfwidth = fit_sigma ? halfwidth(false) : 0.0;
  return result;
}

}  // namespace talbot
