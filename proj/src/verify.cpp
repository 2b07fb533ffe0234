#include "ihr/verify.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ihr/grid.hpp"
#include "ihr/specfun.hpp"

namespace ihr {
namespace verify {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLemma7D0 = 0.5328399753535520236;
}  // namespace

HazardReport check_hazard_monotone(const MixturePlan& plan, double x_lo, double x_hi,
                                   int n, const ToleranceConfig& cfg) {
  if (n < 100) throw std::domain_error("need at least 100 grid points");
  if (!(x_lo < x_hi)) throw std::domain_error("empty grid window");
  if (!(x_lo > plan.family.support_left))
    throw std::domain_error("grid window leaves the support");
  HazardReport rep;
  rep.xs = grid::linspace(x_lo, x_hi, static_cast<std::size_t>(n));
  rep.hazard = hazard_grid(plan, rep.xs, cfg);

  double hmax = 0;
  for (double h : rep.hazard) hmax = std::max(hmax, h);
  const double tol_drop = 1e-8 * hmax;

  rep.max_drop = 0;
  rep.has_drop = false;
  for (std::size_t i = 0; i + 1 < rep.hazard.size(); ++i) {
    const double drop = rep.hazard[i] - rep.hazard[i + 1];
    if (drop > rep.max_drop) {
      rep.max_drop = drop;
      rep.drop_location = rep.xs[i + 1];
      rep.has_drop = true;
    }
  }
  rep.monotone = rep.max_drop <= tol_drop;

  // analytic functional h'/h = (log f)' + h, no differencing involved
  const auto functional = grid::eval(rep.xs, [&](double x) {
    return log_density_derivative(plan, x);
  });
  rep.min_functional = kInf;
  for (std::size_t i = 0; i < rep.xs.size(); ++i) {
    const double v = functional[i] + rep.hazard[i];
    if (v < rep.min_functional) {
      rep.min_functional = v;
      rep.functional_argmin = rep.xs[i];
    }
  }
  return rep;
}

double crosscheck_laplace(const FamilyDescriptor& fd, double lambda,
                          const ToleranceConfig& cfg) {
  const double closed = laplace(fd, lambda, cfg);
  auto f = [&](double x) { return std::exp(-lambda * x + log_s(fd, x)); };
  const double lo = std::isinf(fd.support_left) ? -kInf : 0.0;
  const double quad = integrate_adaptive(f, lo, kInf, cfg).value;
  return std::abs(quad - closed) / std::abs(closed);
}

double lemma5_v0(double a, double u) {
  if (!(a > 0 && a <= 1.0) || !(u >= 1.0))
    throw std::domain_error("requires 0 < a <= 1 <= u");
  if (u == 1.0) return -std::log(a);
  const double A = std::sqrt((u * u - a * a) / (u * u - 1.0));
  const double B = std::sqrt((1.0 - a * a) / (u * u - 1.0));
  return u * std::log(A / a + u * B / a) - std::log(A + B);
}

double lemma7_kmax(double d) {
  if (std::abs(d) > kLemma7D0 * (1.0 + 1e-12)) throw std::domain_error("no feasible k");
  // sinh 2u - 2(u - d) is increasing in u; bracket and solve.
  auto g = [d](double u) { return std::sinh(2 * u) - 2 * (u - d); };
  const double w = std::abs(d) + 2.0;
  const double ud = find_root_monotone(g, -w, w, ToleranceConfig{1e-14, 1e-15, 2000, 200});
  const double ch2 = std::cosh(ud) * std::cosh(ud);
  return std::sqrt(std::max(0.0, (2.0 - ch2) * ch2) / 3.0);
}

SandwichReport ressel_sandwich(double alpha, const std::vector<double>& xs) {
  if (!(alpha >= 1.0 && alpha < 2.0))
    throw std::domain_error("sandwich bounds hold for alpha in [1, 2)");
  const auto fd = make_family(FamilyKind::Ressel(alpha));
  SandwichReport rep;
  rep.max_violation = -kInf;
  for (double x : xs) {
    const double b2 = b_second(fd, x);
    const double g = (alpha - 1.0) / (x * x) +
                     ((2.0 - alpha) * x - alpha * alpha + alpha) / (x * (x + alpha));
    const double h = ((alpha * alpha - 1.0) + (alpha - alpha * alpha) * x +
                      (2.0 - alpha) * x * x) /
                     (x * x * (x + alpha + 1.0));
    const double viol = std::max(h - b2, b2 - g);
    if (viol > rep.max_violation) {
      rep.max_violation = viol;
      rep.at_x = x;
    }
  }
  return rep;
}

SignScanReport sign_scan_b2(const FamilyDescriptor& fd, double lo, double hi, int n) {
  if (!(lo < hi) || !(lo > fd.support_left))
    throw std::domain_error("scan window leaves the support");
  if (n < 2) throw std::domain_error("need at least 2 scan points");
  SignScanReport rep;
  rep.lo = lo;
  rep.hi = hi;
  const auto xs = grid::linspace(lo, hi, static_cast<std::size_t>(n));
  const auto vals = grid::eval(xs, [&fd](double x) { return b_second(fd, x); });
  const auto m = grid::min_by(xs, vals);
  rep.min_value = m.value;
  rep.argmin = m.x;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (vals[i] == 0.0) continue;
    if (vals[i] * vals[i + 1] < 0.0 || (vals[i + 1] == 0.0 && vals[i] != 0.0)) {
      // bisect the bracket to 1e-8
      double a = xs[i], b = xs[i + 1];
      double fa = vals[i];
      while (b - a > 1e-8) {
        const double mid = 0.5 * (a + b);
        const double fm = b_second(fd, mid);
        if (fm == 0.0) { a = b = mid; break; }
        if (fa * fm < 0) {
          b = mid;
        } else {
          a = mid;
          fa = fm;
        }
      }
      rep.sign_changes.emplace_back(0.5 * (a + b), vals[i + 1] > vals[i] ? +1 : -1);
    }
  }
  rep.all_positive = rep.sign_changes.empty() && rep.min_value > 0;
  return rep;
}

double dyson_residual(double a, double b, double lambda, const ToleranceConfig& cfg) {
  if (!(a > 0) || !(lambda > 0)) throw std::domain_error("requires a > 0 and lambda > 0");
  if (b == std::round(b)) throw std::domain_error("b must not be an integer");
  // quadrature side
  double quad;
  if (a >= 1.0) {
    auto f = [a, b, lambda](double x) {
      if (x <= 0) return a == 1.0 ? 1.0 : 0.0;
      return std::exp((a - 1.0) * std::log(x) - (a + b) * std::log1p(x) - lambda * x);
    };
    quad = integrate_adaptive(f, 0.0, kInf, cfg).value;
  } else {
    auto g = [a, b, lambda](double u) {
      if (u <= 0) return 1.0 / a;
      const double x = std::pow(u, 1.0 / a);
      return std::exp(-(a + b) * std::log1p(x) - lambda * x) / a;
    };
    quad = integrate_adaptive(g, 0.0, kInf, cfg).value;
  }
  // decomposition side, with the entire 1/Gamma convention via reflection
  const double term1 = specfun::gamma_real(b) * specfun::gamma_real(a) /
                       specfun::gamma_real(a + b) * specfun::hyp1f1(a, 1.0 - b, lambda);
  const double term2 = specfun::gamma_real(-b) * std::pow(lambda, b) *
                       specfun::hyp1f1(a + b, 1.0 + b, lambda);
  const double rhs = term1 + term2;
  return std::abs(quad - rhs) / std::abs(rhs);
}

double curvature_residual(const FamilyDescriptor& fd, double x, double h) {
  if (h <= 0) h = 1e-4 * std::max(1.0, std::abs(x) / 2.0);
  if (!(x - 2 * h > fd.support_left))
    throw std::domain_error("finite-difference stencil leaves the support");
  // five-point central second derivative of b = -log s
  const double fm2 = b_value(fd, x - 2 * h);
  const double fm1 = b_value(fd, x - h);
  const double f0 = b_value(fd, x);
  const double fp1 = b_value(fd, x + h);
  const double fp2 = b_value(fd, x + 2 * h);
  const double d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h);
  return d2 - b_second(fd, x);
}

}  // namespace verify
}  // namespace ihr
