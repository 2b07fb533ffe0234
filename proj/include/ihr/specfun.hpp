#ifndef IHR_SPECFUN_HPP
#define IHR_SPECFUN_HPP

#include <complex>

namespace ihr {
namespace specfun {

using Complex = std::complex<double>;

/// Principal-branch log Gamma on the right half-plane (Lanczos, g=7).
Complex log_gamma(Complex z);

/// Digamma psi(z) for re(z) > 0 (recurrence + Bernoulli asymptotics).
Complex digamma(Complex z);

/// Trigamma psi'(z) = sum 1/(n+z)^2 for re(z) > 0.
Complex trigamma(Complex z);

/// Confluent hypergeometric 1F1(a; b; lambda), series summation.
/// b must not be a non-positive integer; |lambda| <= 700.
double hyp1f1(double a, double b, double lambda);

/// Upper incomplete gamma Gamma(alpha, x) = int_x^inf t^{alpha-1} e^{-t} dt,
/// alpha > 0, x >= 0 (series / continued fraction split at x = alpha + 1).
double upper_incomplete_gamma(double alpha, double x);

/// Entire reciprocal 1/Gamma(x) on the real line (reflection for x <= 0;
/// zero at non-positive integers).
double recip_gamma(double x);

/// Gamma(x) for real non-pole x, any sign.
double gamma_real(double x);

}  // namespace specfun
}  // namespace ihr

#endif
