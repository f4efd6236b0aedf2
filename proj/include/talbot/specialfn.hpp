#pragma once

#include <complex>

namespace talbot::specialfn {

/// Bessel function of the first kind, integer order, real argument.
/// Absolute error <= 1e-12 for |x| <= 50; accuracy degrades for |x|
/// beyond ~1e6.
double bessel_j(int n, double x);

/// Modified Bessel function of the first kind, integer order, real argument.
double bessel_i(int n, double x);

/// Modified Bessel function of the first kind, integer order, complex
/// argument. Relative error <= 1e-10 for |z| <= 100.
std::complex<double> bessel_i_complex(int n, std::complex<double> z);

/// Error function.
double erf(double x);

/// Unnormalized sinc: sin(x)/x with sinc(0) = 1. The caller passes the
/// full argument (e.g. pi*n*f for grating mask coefficients).
double sinc(double x);

}  // namespace talbot::specialfn
