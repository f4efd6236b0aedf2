#include "talbot/core.hpp"

#include <cmath>
#include <stdexcept>

#include "talbot/constants.hpp"
#include "talbot/errors.hpp"

namespace talbot {

VelocityDist VelocityDist::delta(double v0) {
  VelocityDist d;
  d.kind = Kind::delta;
  d.v0 = v0;
  d.validate();
  return d;
}

VelocityDist VelocityDist::gaussian(double v0, double fwhm) {
  VelocityDist d;
  d.kind = Kind::gaussian;
  d.v0 = v0;
  d.fwhm = fwhm;
  d.validate();
  return d;
}

VelocityDist VelocityDist::tabulated(std::vector<std::pair<double, double>> table) {
  VelocityDist d;
  d.kind = Kind::tabulated;
  d.table = std::move(table);
  d.validate();
  return d;
}

void VelocityDist::validate() const {
  switch (kind) {
    case Kind::delta:
      if (v0 <= 0.0) throw std::domain_error("velocity must be positive");
      break;
    case Kind::gaussian:
      if (v0 <= 0.0) throw std::domain_error("mean velocity must be positive");
      if (fwhm < 0.0) throw std::domain_error("velocity FWHM must be non-negative");
      break;
    case Kind::tabulated: {
      if (table.empty()) throw std::domain_error("empty tabulated velocity distribution");
      double wsum = 0.0;
      for (const auto& [v, w] : table) {
        if (v <= 0.0) throw std::domain_error("tabulated velocity must be positive");
        if (w < 0.0) throw std::domain_error("tabulated weight must be non-negative");
        wsum += w;
      }
      if (wsum <= 0.0) throw std::domain_error("tabulated weights are not normalizable");
      break;
    }
  }
}

void ParticleSpec::validate() const {
  if (mass <= 0.0) throw std::domain_error("particle mass must be positive");
  if (sigma_abs < 0.0) throw std::domain_error("absorption cross-section must be non-negative");
  if (dipole_sq_mean < 0.0) throw std::domain_error("<d_x^2> must be non-negative");
  velocity_dist.validate();
}

GratingSpec GratingSpec::material_mask(double period, double open_fraction) {
  GratingSpec g;
  g.kind = Kind::material_mask;
  g.period = period;
  g.open_fraction = open_fraction;
  g.validate();
  return g;
}

GratingSpec GratingSpec::phase(double period, double phi0) {
  GratingSpec g;
  g.kind = Kind::phase;
  g.period = period;
  g.phi0 = phi0;
  g.validate();
  return g;
}

GratingSpec GratingSpec::ionizing(double period, double phi0, double n0) {
  GratingSpec g;
  g.kind = Kind::ionizing;
  g.period = period;
  g.phi0 = phi0;
  g.n0 = n0;
  g.validate();
  return g;
}

void GratingSpec::validate() const {
  if (period <= 0.0) throw std::domain_error("grating period must be positive");
  if (kind == Kind::material_mask && (open_fraction <= 0.0 || open_fraction >= 1.0))
    throw std::domain_error("open fraction must lie in (0, 1)");
  if (kind == Kind::ionizing && n0 < 0.0)
    throw std::domain_error("mean photon number n0 must be non-negative");
}

void InterferometerConfig::validate() const {
  for (const auto& g : gratings) g.validate();
  const double d = gratings[0].period;
  if (gratings[1].period != d || gratings[2].period != d)
    throw config_error("all three grating periods must be equal");
  if (separation.value <= 0.0) throw config_error("grating separation must be positive");
  if (fourier_order < 1) throw config_error("fourier_order must be >= 1");

  using K = GratingSpec::Kind;
  switch (scheme) {
    case Scheme::kdtli:
      if (gratings[1].kind != K::phase || gratings[0].kind != K::material_mask ||
          gratings[2].kind != K::material_mask)
        throw config_error("KDTLI needs material outer masks and a phase middle grating");
      if (separation.kind != Separation::Kind::length)
        throw config_error("KDTLI is a stationary scheme; separation must be a length");
      break;
    case Scheme::otima:
      for (const auto& g : gratings)
        if (g.kind != K::ionizing)
          throw config_error("OTIMA needs three ionizing gratings");
      if (separation.kind != Separation::Kind::time)
        throw config_error("OTIMA is a pulsed scheme; separation must be a time");
      break;
    case Scheme::tl:
      if (separation.kind != Separation::Kind::length)
        throw config_error("TL is a stationary scheme; separation must be a length");
      break;
  }
}

double talbot_time(double mass, double period) {
  if (mass <= 0.0 || period <= 0.0)
    throw std::domain_error("talbot_time: mass and period must be positive");
  return mass * period * period / constants.h;
}

double talbot_length(double mass, double velocity, double period) {
  if (velocity <= 0.0) throw std::domain_error("talbot_length: velocity must be positive");
  return velocity * talbot_time(mass, period);
}

double de_broglie_wavelength(double mass, double velocity) {
  if (mass <= 0.0 || velocity <= 0.0)
    throw std::domain_error("de_broglie_wavelength: mass and velocity must be positive");
  return constants.h / (mass * velocity);
}

namespace {

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
// Legendre recurrence. Deterministic: fixed starting guesses, convergence
// to machine precision.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[static_cast<std::size_t>(i)] = -z;
    x[static_cast<std::size_t>(n - 1 - i)] = z;
    const double wi = 2.0 / ((1.0 - z * z) * pp * pp);
    w[static_cast<std::size_t>(i)] = wi;
    w[static_cast<std::size_t>(n - 1 - i)] = wi;
  }
}

constexpr double fwhm_to_sigma = 0.42466090014400953;  // 1 / (2 sqrt(2 ln 2))

}  // namespace

std::vector<VelocityNode> velocity_quadrature(const VelocityDist& dist, int n_points) {
  if (n_points < 1) throw std::domain_error("velocity_quadrature: n_points must be >= 1");
  dist.validate();

  std::vector<VelocityNode> nodes;
  switch (dist.kind) {
    case VelocityDist::Kind::delta:
      nodes.push_back({dist.v0, 1.0});
      break;
    case VelocityDist::Kind::gaussian: {
      const double sigma = dist.fwhm * fwhm_to_sigma;
      if (sigma == 0.0) {
        nodes.push_back({dist.v0, 1.0});
        break;
      }
      double lo = dist.v0 - 4.0 * sigma;
      double hi = dist.v0 + 4.0 * sigma;
      if (lo <= 0.0) lo = std::min(hi, 1e-6 * dist.v0);  // clip to v > 0
      std::vector<double> x, w;
      gauss_legendre(n_points, x, w);
      const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
      double wsum = 0.0;
      for (int i = 0; i < n_points; ++i) {
        const double v = mid + half * x[static_cast<std::size_t>(i)];
        const double u = (v - dist.v0) / sigma;
        const double wi = w[static_cast<std::size_t>(i)] * std::exp(-0.5 * u * u);
        nodes.push_back({v, wi});
        wsum += wi;
      }
      for (auto& nd : nodes) nd.weight /= wsum;
      break;
    }
    case VelocityDist::Kind::tabulated: {
      double wsum = 0.0;
      for (const auto& [v, w] : dist.table) wsum += w;
      for (const auto& [v, w] : dist.table) nodes.push_back({v, w / wsum});
      break;
    }
  }
  return nodes;
}

}  // namespace talbot
