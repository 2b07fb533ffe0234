#include "ihr/specfun.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace ihr {
namespace specfun {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

// Lanczos approximation, g = 7, 9 coefficients. The coefficients are
// implementation constants; correctness is pinned by the recurrence
// invariant log Gamma(z+1) = log z + log Gamma(z).
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

void require_right_half_plane(const Complex& z) {
  if (!(z.real() > 0))
    throw std::domain_error("argument outside right half-plane");
}

}  // namespace

Complex log_gamma(Complex z) {
  require_right_half_plane(z);
  Complex acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + Complex(i - 1, 0));
  const Complex t = z + 6.5;
  return 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(t) - t + std::log(acc);
}

Complex digamma(Complex z) {
  require_right_half_plane(z);
  Complex acc = 0;
  while (z.real() < 10.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  const Complex w2 = 1.0 / (z * z);
  // psi(z) ~ log z - 1/(2z) - sum B_{2k}/(2k z^{2k}), B2..B12.
  Complex series = -1.0 / 132.0;
  series = series * w2 + 1.0 / 240.0;
  series = series * w2 - 1.0 / 252.0;
  series = series * w2 + 1.0 / 120.0;
  series = series * w2 - 1.0 / 12.0;
  return acc + std::log(z) - 0.5 / z + series * w2;
}

Complex trigamma(Complex z) {
  require_right_half_plane(z);
  Complex acc = 0;
  while (z.real() < 10.0) {
    acc += 1.0 / (z * z);
    z += 1.0;
  }
  const Complex w = 1.0 / z;
  const Complex w2 = w * w;
  // psi'(z) ~ 1/z + 1/(2z^2) + sum B_{2k} z^{-2k-1}, B2..B12.
  Complex series = -691.0 / 2730.0;
  series = series * w2 + 5.0 / 66.0;
  series = series * w2 - 1.0 / 30.0;
  series = series * w2 + 1.0 / 42.0;
  series = series * w2 - 1.0 / 30.0;
  series = series * w2 + 1.0 / 6.0;
  return acc + w + 0.5 * w2 + series * w2 * w;
}

double hyp1f1(double a, double b, double lambda) {
  if (b <= 0 && std::abs(b - std::round(b)) < 1e-12)
    throw std::domain_error("denominator parameter is a non-positive integer");
  if (std::abs(lambda) > 700.0)
    throw std::domain_error("1F1 argument too large");
  double term = 1.0;
  double sum = 1.0;
  int small_streak = 0;
  for (int n = 0; n < 5000; ++n) {
    term *= (a + n) * lambda / ((b + n) * (n + 1));
    sum += term;
    if (!std::isfinite(sum)) throw std::runtime_error("1F1 overflow");
    if (std::abs(term) < 1e-16 * std::abs(sum)) {
      if (++small_streak >= 3) return sum;
    } else {
      small_streak = 0;
    }
  }
  throw std::runtime_error("1F1 series did not converge");
}

double upper_incomplete_gamma(double alpha, double x) {
  if (!(alpha > 0)) throw std::domain_error("alpha must be positive");
  if (x < 0) throw std::domain_error("x must be nonnegative");
  if (x == 0) return std::tgamma(alpha);
  const double eps = 1e-16;
  const double log_prefix = -x + alpha * std::log(x);
  if (x < alpha + 1.0) {
    // lower series, then complement
    double ap = alpha;
    double del = 1.0 / alpha;
    double sum = del;
    for (int n = 0; n < 1000; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * eps) {
        const double lower = std::exp(log_prefix) * sum;
        return std::tgamma(alpha) - lower;
      }
    }
    throw std::runtime_error("incomplete gamma series did not converge");
  }
  // continued fraction for the upper tail (modified Lentz)
  const double fpmin = 1e-300;
  double b = x + 1.0 - alpha;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -i * (i - alpha);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= eps) return std::exp(log_prefix) * h;
  }
  throw std::runtime_error("incomplete gamma continued fraction did not converge");
}

double recip_gamma(double x) {
  if (x > 0) return std::exp(-std::lgamma(x));
  if (x == std::round(x)) return 0.0;  // poles of Gamma
  return std::sin(kPi * x) * std::exp(std::lgamma(1.0 - x)) / kPi;
}

double gamma_real(double x) {
  if (x > 0) return std::tgamma(x);
  if (x == std::round(x)) throw std::domain_error("Gamma pole at non-positive integer");
  return kPi / (std::sin(kPi * x) * std::exp(std::lgamma(1.0 - x)));
}

}  // namespace specfun
}  // namespace ihr
