#include "talbot/specialfn.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

namespace talbot::specialfn {

namespace {

// Ascending series J_n(x) = (x/2)^n / n! * sum_k (-x^2/4)^k / (k! (n+k)_k...).
// Safe against cancellation for x below ~9.
double bessel_j_series(int n, double x) {
  double t = 1.0;
  for (int k = 1; k <= n; ++k) t *= 0.5 * x / k;
  if (t == 0.0) return 0.0;
  const double q = -0.25 * x * x;
  double sum = t;
  for (int k = 1; k < 400; ++k) {
    t *= q / (static_cast<double>(k) * (n + k));
    sum += t;
    if (std::abs(t) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

// Miller's backward recurrence, normalized by J_0 + 2 J_2 + 2 J_4 + ... = 1.
double bessel_j_miller(int n, double x) {
  const double big = 1e250, scale = 1e-250;
  int m = std::max(n, static_cast<int>(x));
  m += 18 + static_cast<int>(4.0 * std::sqrt(static_cast<double>(m)));
  if (m % 2 != 0) ++m;

  double jp = 0.0;     // J_{k+1}
  double jc = 1e-280;  // J_k, arbitrary seed at k = m
  double norm = 0.0;
  double val = 0.0;
  for (int k = m; k >= 1; --k) {
    const double jm = (2.0 * k / x) * jc - jp;  // J_{k-1}
    jp = jc;
    jc = jm;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? jc : 2.0 * jc;
    if (k - 1 == n) val = jc;
    if (std::abs(jc) > big) {
      jc *= scale;
      jp *= scale;
      norm *= scale;
      val *= scale;
    }
  }
  return val / norm;
}

}  // namespace

double bessel_j(int n, double x) {
  // Parity reductions: J_{-n}(x) = (-1)^n J_n(x), J_n(-x) = (-1)^n J_n(x).
  double sign = 1.0;
  if (n < 0) {
    n = -n;
    if (n % 2 != 0) sign = -sign;
  }
  if (x < 0.0) {
    x = -x;
    if (n % 2 != 0) sign = -sign;
  }
  if (x == 0.0) return (n == 0) ? 1.0 : 0.0;
  if (x <= 9.0) return sign * bessel_j_series(n, x);
  return sign * bessel_j_miller(n, x);
}

namespace {

std::complex<double> bessel_i_series(int n, std::complex<double> z) {
  std::complex<double> t = 1.0;
  for (int k = 1; k <= n; ++k) t *= 0.5 * z / static_cast<double>(k);
  const std::complex<double> q = 0.25 * z * z;
  std::complex<double> sum = t;
  for (int k = 1; k < 400; ++k) {
    t *= q / (static_cast<double>(k) * static_cast<double>(n + k));
    sum += t;
    if (std::abs(t) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

// Backward recurrence I_{k-1} = I_{k+1} + (2k/z) I_k with the entire-plane
// normalization e^z = I_0 + 2 sum_{k>=1} I_k. Valid for Re z >= 0, where the
// normalization sum has no catastrophic cancellation.
std::complex<double> bessel_i_miller(int n, std::complex<double> z) {
  const double big = 1e250, scale = 1e-250;
  const double az = std::abs(z);
  int m = std::max(n, static_cast<int>(az));
  m += 18 + static_cast<int>(4.0 * std::sqrt(static_cast<double>(m)));

  std::complex<double> ip = 0.0;      // I_{k+1}
  std::complex<double> ic = 1e-280;   // I_k
  std::complex<double> norm = 0.0;
  std::complex<double> val = 0.0;
  bool seen = false;

  for (int k = m; k >= 1; --k) {
    std::complex<double> im = ip + (2.0 * k / z) * ic;
    ip = ic;
    ic = im;
    norm += (k - 1 == 0) ? ic : 2.0 * ic;
    if (k - 1 == n) {
      val = ic;
      seen = true;
    }
    if (std::abs(ic) > big) {
      ic *= scale;
      ip *= scale;
      norm *= scale;
      val *= scale;
    }
  }
  if (!seen) return 0.0;
  return val * std::exp(z) / norm;
}

}  // namespace

std::complex<double> bessel_i_complex(int n, std::complex<double> z) {
  if (n < 0) n = -n;  // I_{-n} = I_n
  if (z == std::complex<double>{0.0, 0.0}) return (n == 0) ? 1.0 : 0.0;
  // Fold to the right half plane: I_n(-z) = (-1)^n I_n(z).
  if (z.real() < 0.0) {
    const std::complex<double> r = bessel_i_complex(n, -z);
    return (n % 2 == 0) ? r : -r;
  }
  if (std::abs(z) <= 8.0) return bessel_i_series(n, z);
  return bessel_i_miller(n, z);
}

double bessel_i(int n, double x) {
  return bessel_i_complex(n, {x, 0.0}).real();
}

double erf(double x) { return std::erf(x); }

double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

}  // namespace talbot::specialfn
