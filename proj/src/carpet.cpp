#include "talbot/carpet.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace talbot {

using std::numbers::pi;

std::vector<double> uniform_positions(int n) {
  if (n < 1) throw std::domain_error("uniform_positions: n must be >= 1");
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k)] = static_cast<double>(k) / n;
  return x;
}

namespace {

int carpet_order(const TalbotCoeffFn& fn, int order_max) {
  if (order_max > 0) return order_max;
  if (fn.spec) {
    const auto& g = *fn.spec;
    if (g.kind == GratingSpec::Kind::material_mask) return 48;  // 1/n coefficient decay
    return default_order_max(g.phi0, g.n0);
  }
  return 16;
}

CarpetGrid build(const TalbotCoeffFn& fn, std::span<const double> times,
                 std::span<const double> positions, int N) {
  CarpetGrid grid;
  grid.times.assign(times.begin(), times.end());
  grid.positions.assign(positions.begin(), positions.end());
  grid.density.reserve(times.size());

  for (const double tau : times) {
    if (tau < 0.0) throw std::domain_error("carpet: times must be non-negative");
    // B_n(n tau) for n = 0..N; negative orders follow from hermiticity.
    std::vector<std::complex<double>> bn(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) bn[static_cast<std::size_t>(n)] = fn(n, n * tau);
    const double edge = std::abs(bn[static_cast<std::size_t>(N)]);
    grid.max_tail_coeff = std::max(grid.max_tail_coeff, edge);

    std::vector<double> row;
    row.reserve(positions.size());
    for (const double x : positions) {
      double w = bn[0].real();
      for (int n = 1; n <= N; ++n) {
        const double arg = 2.0 * pi * n * x;
        const std::complex<double> ph{std::cos(arg), std::sin(arg)};
        w += 2.0 * (bn[static_cast<std::size_t>(n)] * ph).real();
      }
      row.push_back(w);
    }
    grid.density.push_back(std::move(row));
  }
  grid.truncation_warning = grid.max_tail_coeff > 1e-6;
  return grid;
}

}  // namespace

CarpetGrid carpet(const TalbotCoeffFn& coeff_fn, std::span<const double> times,
                  std::span<const double> positions, int order_max) {
  return build(coeff_fn, times, positions, carpet_order(coeff_fn, order_max));
}

CarpetGrid classical_carpet(const GratingSpec& spec, std::span<const double> times,
                            std::span<const double> positions, int order_max,
                            int quadrature_points) {
  const TalbotCoeffFn fn = talbot_coeff_classical(spec, quadrature_points);
  return build(fn, times, positions, carpet_order(fn, order_max));
}

}  // namespace talbot
