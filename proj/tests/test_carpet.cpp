#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "talbot/carpet.hpp"

using namespace talbot;
using std::numbers::pi;

namespace {

// |t(x)|^2 of the ionizing grating, evaluated directly.
double ionizing_profile(double x_over_d, double n0, double shift_over_d) {
  const double c = std::cos(pi * (x_over_d + shift_over_d));
  return std::exp(-n0 * c * c);
}

double row_mean(const std::vector<double>& row) {
  double s = 0.0;
  for (const double v : row) s += v;
  return s / static_cast<double>(row.size());
}

}  // namespace

TEST_CASE("phase grating carpet is flat at t = 0") {
  const auto fn = talbot_coeff_quantum(GratingSpec::phase(266e-9, pi));
  const std::vector<double> times{0.0};
  const auto pos = uniform_positions(128);
  const auto grid = carpet(fn, times, pos);
  for (const double w : grid.density[0]) CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ionizing carpet self-image at t = T_T is the shifted mask profile") {
  const double n0 = 2.0, phi0 = 2.0;
  const auto fn = talbot_coeff_quantum(GratingSpec::ionizing(78.5e-9, phi0, n0));
  const std::vector<double> times{1.0, 2.0};
  const auto pos = uniform_positions(512);
  const auto grid = carpet(fn, times, pos);
  for (std::size_t k = 0; k < pos.size(); ++k) {
    // shifted by half a period at t = T_T
    CHECK(std::abs(grid.density[0][k] - ionizing_profile(pos[k], n0, 0.5)) < 1e-8);
    // unshifted revival at t = 2 T_T
    CHECK(std::abs(grid.density[1][k] - ionizing_profile(pos[k], n0, 0.0)) < 1e-8);
  }
}

TEST_CASE("classical carpet: no revival, lensing instead") {
  const double n0 = 2.0, phi0 = pi;
  const auto spec = GratingSpec::ionizing(78.5e-9, phi0, n0);
  const auto pos = uniform_positions(256);

  SUBCASE("t = 0 equals the quantum carpet") {
    const std::vector<double> t0{0.0};
    const auto q = carpet(talbot_coeff_quantum(spec), t0, pos);
    const auto c = classical_carpet(spec, t0, pos);
    for (std::size_t k = 0; k < pos.size(); ++k)
      CHECK(q.density[0][k] == doctest::Approx(c.density[0][k]).epsilon(1e-7));
  }

  SUBCASE("no Talbot image of the mask at t = T_T") {
    const std::vector<double> t1{1.0};
    const auto c = classical_carpet(spec, t1, pos);
    double dev = 0.0;
    for (std::size_t k = 0; k < pos.size(); ++k)
      dev = std::max(dev, std::abs(c.density[0][k] - ionizing_profile(pos[k], n0, 0.5)));
    CHECK(dev > 0.05);
  }

  SUBCASE("pure phase grating shows classical focusing above unit density") {
    const auto pg = GratingSpec::phase(266e-9, pi);
    std::vector<double> times;
    for (int i = 1; i < 20; ++i) times.push_back(i / 20.0);
    const auto c = classical_carpet(pg, times, pos);
    double peak = 0.0;
    for (const auto& row : c.density)
      for (const double w : row) peak = std::max(peak, w);
    CHECK(peak > 1.0);
  }
}

TEST_CASE("carpet conserves the transmitted density") {
  const auto pos = uniform_positions(256);
  std::vector<double> times;
  for (int i = 0; i <= 16; ++i) times.push_back(2.0 * i / 16.0);

  SUBCASE("phase grating: unit mean at every time") {
    const auto grid = carpet(talbot_coeff_quantum(GratingSpec::phase(266e-9, pi)), times, pos);
    for (const auto& row : grid.density)
      CHECK(std::abs(row_mean(row) - 1.0) < 1e-9);
  }
  SUBCASE("ionizing grating: mean equals the average transmission at every time") {
    const double n0 = 2.0;
    double avg = 0.0;
    const int N = 1 << 14;
    for (int k = 0; k < N; ++k) avg += ionizing_profile(k / static_cast<double>(N), n0, 0.0);
    avg /= N;
    const auto grid =
        carpet(talbot_coeff_quantum(GratingSpec::ionizing(78.5e-9, 1.0, n0)), times, pos);
    for (const auto& row : grid.density)
      CHECK(std::abs(row_mean(row) - avg) < 1e-8);
    // raw densities stay non-negative up to truncation ringing
    for (const auto& row : grid.density)
      for (const double w : row) CHECK(w > -1e-9);
  }
}

TEST_CASE("carpet densities are real: imaginary residue of the full sum") {
  const auto fn = talbot_coeff_quantum(GratingSpec::ionizing(78.5e-9, 1.3, 2.1));
  const int N = default_order_max(1.3, 2.1);
  for (double tau : {0.27, 0.81, 1.44})
    for (double x : {0.11, 0.53, 0.97}) {
      std::complex<double> w{0.0, 0.0};
      for (int n = -N; n <= N; ++n) {
        const double arg = 2.0 * pi * n * x;
        w += fn(n, n * tau) * std::complex<double>{std::cos(arg), std::sin(arg)};
      }
      CHECK(std::abs(w.imag()) < 1e-12);
    }
}

TEST_CASE("quantum carpet is 2 T_T periodic; classical is not") {
  const auto spec = GratingSpec::phase(266e-9, pi);
  const auto pos = uniform_positions(64);
  const std::vector<double> ta{0.37}, tb{2.37};

  const auto qa = carpet(talbot_coeff_quantum(spec), ta, pos);
  const auto qb = carpet(talbot_coeff_quantum(spec), tb, pos);
  for (std::size_t k = 0; k < pos.size(); ++k)
    CHECK(std::abs(qa.density[0][k] - qb.density[0][k]) < 1e-10);

  const auto ca = classical_carpet(spec, ta, pos);
  const auto cb = classical_carpet(spec, tb, pos);
  double dev = 0.0;
  for (std::size_t k = 0; k < pos.size(); ++k)
    dev = std::max(dev, std::abs(ca.density[0][k] - cb.density[0][k]));
  CHECK(dev > 0.01);
}

TEST_CASE("truncation warning") {
  const auto spec = GratingSpec::phase(266e-9, 2.0 * pi);
  const auto pos = uniform_positions(32);
  const std::vector<double> times{0.3};
  CHECK_FALSE(carpet(talbot_coeff_quantum(spec), times, pos).truncation_warning);
  CHECK(carpet(talbot_coeff_quantum(spec), times, pos, 2).truncation_warning);
}

TEST_CASE("carpet rejects negative times") {
  const std::vector<double> times{-0.1};
  const auto pos = uniform_positions(8);
  CHECK_THROWS_AS(carpet(talbot_coeff_quantum(GratingSpec::phase(1e-7, 1.0)), times, pos),
                  std::domain_error);
}
