#include <cmath>
#include <complex>

#include "doctest.h"
#include "talbot/specialfn.hpp"

using namespace talbot::specialfn;
using cplx = std::complex<double>;

namespace {

// Independent ascending-series oracle in extended precision; safe for
// |x| <= 8 where no catastrophic cancellation occurs.
long double bessel_j_oracle(int n, long double x) {
  long double t = 1.0L;
  for (int k = 1; k <= n; ++k) t *= 0.5L * x / k;
  long double sum = t;
  const long double q = -0.25L * x * x;
  for (int k = 1; k < 200; ++k) {
    t *= q / (static_cast<long double>(k) * (n + k));
    sum += t;
    if (std::abs(t) < 1e-22L * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("bessel_j trivial values and parity") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  for (int n = 1; n <= 6; ++n) CHECK(bessel_j(n, 0.0) == 0.0);
  CHECK(bessel_j(-3, 2.5) == doctest::Approx(-bessel_j(3, 2.5)).epsilon(1e-14));
  CHECK(bessel_j(3, -2.5) == doctest::Approx(-bessel_j(3, 2.5)).epsilon(1e-14));
  CHECK(bessel_j(2, -2.5) == doctest::Approx(bessel_j(2, 2.5)).epsilon(1e-14));
}

TEST_CASE("bessel_j frozen reference values") {
  CHECK(bessel_j(2, 3.141592653589793) == doctest::Approx(0.48543393263150911).epsilon(1e-13));
  CHECK(bessel_j(3, 2.5) == doctest::Approx(0.216600391039113525).epsilon(1e-13));
  CHECK(bessel_j(5, 20.0) == doctest::Approx(0.151169767982394975).epsilon(1e-12));
  CHECK(bessel_j(0, 50.0) == doctest::Approx(0.055812327669251815).epsilon(1e-11));
  CHECK(bessel_j(10, 30.0) == doctest::Approx(-0.129876893998588768).epsilon(1e-12));
  CHECK(bessel_j(2, 14.5) == doctest::Approx(-0.0608649419971283663).epsilon(1e-11));
  CHECK(bessel_j(7, 9.3) == doctest::Approx(0.306755267002115099).epsilon(1e-12));
}

TEST_CASE("bessel_j against series oracle on the small-argument domain") {
  for (int n = 0; n <= 10; ++n)
    for (double x : {0.1, 0.7, 1.9, 3.3, 5.5, 7.8}) {
      const double ref = static_cast<double>(bessel_j_oracle(n, x));
      CHECK(bessel_j(n, x) == doctest::Approx(ref).epsilon(5e-14));
    }
}

TEST_CASE("bessel_j three-term recurrence") {
  for (int n = 1; n <= 10; ++n)
    for (double x : {0.5, 2.0, 10.0}) {
      const double lhs = bessel_j(n - 1, x) + bessel_j(n + 1, x);
      const double rhs = 2.0 * n / x * bessel_j(n, x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("bessel_i_complex trivial values and symmetries") {
  CHECK(bessel_i_complex(0, {0.0, 0.0}) == cplx{1.0, 0.0});
  CHECK(bessel_i_complex(3, {0.0, 0.0}) == cplx{0.0, 0.0});

  const cplx z{1.3, -0.8};
  const cplx a = bessel_i_complex(2, std::conj(z));
  const cplx b = std::conj(bessel_i_complex(2, z));
  CHECK(std::abs(a - b) < 1e-12);
  CHECK(std::abs(bessel_i_complex(-4, z) - bessel_i_complex(4, z)) < 1e-15);

  // real argument: real result, positive for even order
  const cplx r = bessel_i_complex(2, {3.7, 0.0});
  CHECK(std::abs(r.imag()) < 1e-14);
  CHECK(r.real() > 0.0);
}

TEST_CASE("bessel_i_complex frozen reference values") {
  CHECK(bessel_i_complex(1, {1.0, 0.0}).real() ==
        doctest::Approx(0.56515910399248503).epsilon(1e-12));
  const cplx v0 = bessel_i_complex(0, {30.0, 40.0});
  CHECK(v0.real() == doctest::Approx(-157808141422.22008).epsilon(1e-10));
  CHECK(v0.imag() == doctest::Approx(582834056164.05286).epsilon(1e-10));
  const cplx v3 = bessel_i_complex(3, {30.0, 40.0});
  CHECK(v3.real() == doctest::Approx(-189360484319.35608).epsilon(1e-10));
  CHECK(v3.imag() == doctest::Approx(539978263670.01192).epsilon(1e-10));
  const cplx w = bessel_i_complex(3, {2.0, -3.0});
  CHECK(w.real() == doctest::Approx(-0.6256653277457858).epsilon(1e-11));
  CHECK(w.imag() == doctest::Approx(0.4247187949296396).epsilon(1e-11));
}

TEST_CASE("bessel_i_complex on the imaginary axis matches i^n J_n") {
  // I_n(i x) = i^n J_n(x)
  for (int n = 0; n <= 5; ++n) {
    const cplx lhs = bessel_i_complex(n, {0.0, 1.7});
    cplx rhs = bessel_j(n, 1.7);
    for (int k = 0; k < n; ++k) rhs *= cplx{0.0, 1.0};
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
  // and far out on the axis, within the |z| <= 100 contract
  const cplx big = bessel_i_complex(4, {0.0, 77.0});
  CHECK(big.real() == doctest::Approx(0.0552188767584835).epsilon(1e-9));
  CHECK(std::abs(big.imag()) < 1e-12);
}

TEST_CASE("bessel_i real wrapper") {
  CHECK(bessel_i(0, 0.5) == doctest::Approx(1.06348337074132352).epsilon(1e-12));
  CHECK(bessel_i(2, 0.5) == doctest::Approx(0.0319061491777382538).epsilon(1e-12));
  CHECK(bessel_i(2, -0.5) == doctest::Approx(bessel_i(2, 0.5)).epsilon(1e-14));
}

TEST_CASE("erf basics") {
  using talbot::specialfn::erf;
  CHECK(erf(0.0) == 0.0);
  CHECK(erf(0.3925) == doctest::Approx(0.4211592531161994).epsilon(1e-13));
  for (double x : {0.2, 0.9, 2.4})
    CHECK(erf(-x) == doctest::Approx(-erf(x)).epsilon(1e-15));
  CHECK(std::abs(erf(6.0) - 1.0) < 1e-15);
}

TEST_CASE("sinc convention") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(std::abs(sinc(3.141592653589793)) < 1e-15);
  const double x = 3.141592653589793 * 0.48;
  CHECK(sinc(x) == doctest::Approx(0.66183702986330017).epsilon(1e-13));
  // series/direct seam is continuous
  CHECK(sinc(1.0000001e-4) == doctest::Approx(sinc(0.9999999e-4)).epsilon(1e-12));
}
