#ifndef IHR_NUMERICS_HPP
#define IHR_NUMERICS_HPP

#include <functional>

namespace ihr {

struct ToleranceConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
  int max_iterations = 200;

  void validate() const;  // throws std::domain_error on bad values
};

struct QuadratureResult {
  double value = 0;
  double abs_err_estimate = 0;
  int subdivisions = 1;
};

using RealFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (15/7) integration. lo/hi may be +-infinity;
/// semi-infinite ranges are mapped through x = A + t/(1-t). Panels are
/// bisected worst-error-first until the summed |K15-G7| estimate meets
/// max(abs_tol, rel_tol*|value|).
QuadratureResult integrate_adaptive(const RealFn& f, double lo, double hi,
                                    const ToleranceConfig& cfg = {});

/// Root of a monotone f with f(lo)*f(hi) <= 0. Safeguarded secant/bisection:
/// the secant step is taken only when it stays inside the bracket and halves
/// |f|, otherwise the bracket is bisected.
double find_root_monotone(const RealFn& f, double lo, double hi,
                          const ToleranceConfig& cfg = {});

struct MinimizeResult {
  double x_min = 0;
  double f_min = 0;
};

/// Golden-section minimization of a unimodal f on [lo, hi].
MinimizeResult minimize_unimodal(const RealFn& f, double lo, double hi,
                                 const ToleranceConfig& cfg = {});

}  // namespace ihr

#endif
