#ifndef IHR_VERIFY_HPP
#define IHR_VERIFY_HPP

#include <utility>
#include <vector>

#include "ihr/mixture.hpp"

namespace ihr {
namespace verify {

struct SignScanReport {
  double lo = 0;
  double hi = 0;
  std::vector<std::pair<double, int>> sign_changes;  // (x, +1 up / -1 down)
  bool all_positive = false;
  double min_value = 0;
  double argmin = 0;
};

/// Hazard over an n-point grid on [x_lo, x_hi]; monotone when no consecutive
/// drop exceeds 1e-8 of the grid maximum. Also evaluates the analytic
/// functional (log f)' + h (= h'/h), which avoids differencing quadrature noise.
HazardReport check_hazard_monotone(const MixturePlan& plan, double x_lo, double x_hi,
                                   int n, const ToleranceConfig& cfg = {});

/// Relative gap between quadrature of e^{-lambda x} s(x) and the closed-form
/// Laplace transform.
double crosscheck_laplace(const FamilyDescriptor& fd, double lambda,
                          const ToleranceConfig& cfg = {});

/// Smallest v0 such that a cosh x <= cosh(u x + v) for all x iff |v| <= v0
/// (0 < a <= 1 <= u); the u = 1 case degenerates to -log a.
double lemma5_v0(double a, double u);

/// Largest k with sqrt(3 k^2 + (u-d)^2) <= cosh u for all u, given |d| <= d0 =
/// sqrt(2) - log(1+sqrt(2)). Solves sinh 2u = 2(u-d) and evaluates
/// sqrt((2 - cosh^2 u_d) cosh^2 u_d / 3).
double lemma7_kmax(double d);

struct SandwichReport {
  double max_violation = 0;  // max over the grid of both bound violations
  double at_x = 0;
};

/// Checks h(x) <= b''(x) <= g(x) for the Ressel series curvature on a grid.
SandwichReport ressel_sandwich(double alpha, const std::vector<double>& xs);

/// Sign changes of b_second on an n-point grid, each refined by bisection.
SignScanReport sign_scan_b2(const FamilyDescriptor& fd, double lo, double hi, int n);

/// Relative residual of the confluent-hypergeometric decomposition of
/// C(a,b,lambda) against direct quadrature (b non-integer).
double dyson_residual(double a, double b, double lambda,
                      const ToleranceConfig& cfg = {});

/// Central finite-difference (-log s)''(x) minus b_second(fd, x): adjudicates
/// the curvature evaluator against the literal density. Zero (to FD accuracy)
/// for every family except Ressel, where the gap is (alpha-2)/x.
/// h <= 0 picks a stencil width scaled to x.
double curvature_residual(const FamilyDescriptor& fd, double x, double h = 0);

}  // namespace verify
}  // namespace ihr

#endif
