#include "ihr/numerics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace ihr {

void ToleranceConfig::validate() const {
  if (!(rel_tol > 0) || !(abs_tol > 0))
    throw std::domain_error("tolerances must be strictly positive");
  if (max_subdivisions < 10 || max_iterations < 10)
    throw std::domain_error("iteration caps must be at least 10");
}

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

double eval_checked(const RealFn& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) throw std::domain_error("integrand not finite");
  return y;
}

Panel gk15(const RealFn& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  double fc = eval_checked(f, c);
  double gauss = kWg[3] * fc;
  double kron = kWgk[7] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double fs = eval_checked(f, c - dx) + eval_checked(f, c + dx);
    kron += kWgk[i] * fs;
    if (i % 2 == 1) gauss += kWg[i / 2] * fs;
  }
  return Panel{lo, hi, kron * h, std::abs((kron - gauss) * h)};
}

QuadratureResult integrate_finite(const RealFn& f, double lo, double hi,
                                  const ToleranceConfig& cfg) {
  std::priority_queue<Panel> panels;
  panels.push(gk15(f, lo, hi));
  int subdivisions = 1;
  double total_value = panels.top().value;
  double total_error = panels.top().error;
  while (total_error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total_value))) {
    if (subdivisions >= cfg.max_subdivisions)
      throw std::runtime_error("quadrature did not converge");
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(worst.lo < mid && mid < worst.hi))
      throw std::runtime_error("quadrature did not converge");
    Panel left = gk15(f, worst.lo, mid);
    Panel right = gk15(f, mid, worst.hi);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++subdivisions;
  }
  return QuadratureResult{total_value, total_error, subdivisions};
}

}  // namespace

namespace {

// Geometric panel extension: blocks of doubling width until a block
// contributes less than abs_tol. Handles polynomially decaying tails the
// t/(1-t) transform cannot (the transformed integrand blows up at t = 1).
QuadratureResult integrate_panels_to_inf(const RealFn& f, double lo, int sign,
                                         const ToleranceConfig& cfg) {
  ToleranceConfig block_cfg = cfg;
  block_cfg.abs_tol = 0.1 * cfg.abs_tol;
  double total = 0, err = 0;
  int subdivisions = 0;
  double a = lo;
  double width = std::max(1.0, 0.125 * (std::abs(lo) + 1.0));
  for (int k = 0; k < 220; ++k) {
    const double b = a + sign * width;
    const QuadratureResult r = (sign > 0) ? integrate_finite(f, a, b, block_cfg)
                                          : integrate_finite(f, b, a, block_cfg);
    total += r.value;
    err += r.abs_err_estimate;
    subdivisions += r.subdivisions;
    if (subdivisions > cfg.max_subdivisions)
      throw std::runtime_error("quadrature did not converge");
    if (k >= 3 && std::abs(r.value) < cfg.abs_tol) {
      // remainder bound: block contributions shrink at least geometrically
      // once the last ones do, so charge two more blocks' worth
      return QuadratureResult{total, err + 2.0 * std::abs(r.value),
                              std::max(1, subdivisions)};
    }
    a = b;
    width *= 2.0;
  }
  throw std::runtime_error("quadrature did not converge");
}

// Transformed integrand for x = A + sign * t/(1-t).
double mapped_value(const RealFn& f, double A, int sign, double t) {
  const double u = 1.0 - t;
  const double x = A + sign * t / u;
  if (!std::isfinite(x)) return 0.0;
  return f(x) / (u * u);
}

// The transform is only sound when the mapped integrand dies off toward
// t = 1; polynomial tails make it blow up there instead.
bool transform_safe(const RealFn& f, double A, int sign, const ToleranceConfig& cfg) {
  double worst = 0;
  for (double eps : {1e-3, 1e-5, 1e-7, 1e-9})
    worst = std::max(worst, std::abs(mapped_value(f, A, sign, 1.0 - eps)));
  return worst <= 1e3 * cfg.abs_tol;
}

QuadratureResult integrate_semi_infinite(const RealFn& f, double A, int sign,
                                         const ToleranceConfig& cfg) {
  if (transform_safe(f, A, sign, cfg)) {
    auto g = [&f, A, sign](double t) { return mapped_value(f, A, sign, t); };
    try {
      return integrate_finite(g, 0.0, 1.0, cfg);
    } catch (const std::runtime_error&) {
      // fall through to panel extension
    }
  }
  return integrate_panels_to_inf(f, A, sign, cfg);
}

}  // namespace

QuadratureResult integrate_adaptive(const RealFn& f, double lo, double hi,
                                    const ToleranceConfig& cfg) {
  cfg.validate();
  const bool lo_inf = std::isinf(lo);
  const bool hi_inf = std::isinf(hi);
  if (!lo_inf && !hi_inf) {
    if (!(lo < hi)) throw std::domain_error("empty integration range");
    return integrate_finite(f, lo, hi, cfg);
  }
  if (lo_inf && hi_inf) {
    ToleranceConfig half = cfg;
    half.max_subdivisions = std::max(10, cfg.max_subdivisions / 2);
    QuadratureResult a = integrate_adaptive(f, lo, 0.0, half);
    QuadratureResult b = integrate_adaptive(f, 0.0, hi, half);
    return QuadratureResult{a.value + b.value, a.abs_err_estimate + b.abs_err_estimate,
                            a.subdivisions + b.subdivisions};
  }
  if (hi_inf) return integrate_semi_infinite(f, lo, +1, cfg);
  return integrate_semi_infinite(f, hi, -1, cfg);
}

double find_root_monotone(const RealFn& f, double lo, double hi,
                          const ToleranceConfig& cfg) {
  cfg.validate();
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (!std::isfinite(fa) || !std::isfinite(fb))
    throw std::domain_error("function not finite at bracket");
  if (fa == 0) return a;
  if (fb == 0) return b;
  if (fa * fb > 0) throw std::domain_error("root not bracketed");

  // Width exit is at machine scale: the |f| <= abs_tol exit dominates for
  // well-scaled functions, the width exit guards steep ones.
  const double eps = std::numeric_limits<double>::epsilon();
  auto width_done = [&](double x) {
    return std::abs(b - a) <= 4 * eps * std::max(1.0, std::abs(x));
  };
  double x = a, fx = fa;
  double x_prev = b, f_prev = fb;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    double cand = 0.5 * (a + b);
    // Secant step, accepted only when inside the bracket; a step that fails
    // to halve |f| forfeits the next secant try below.
    if (f_prev != fx) {
      const double s = x - fx * (x - x_prev) / (fx - f_prev);
      if (s > std::min(a, b) && s < std::max(a, b)) cand = s;
    }
    const double fcand = f(cand);
    if (!std::isfinite(fcand)) throw std::domain_error("function not finite");
    x_prev = x;
    f_prev = fx;
    x = cand;
    fx = fcand;
    if (fa * fx <= 0) {
      b = cand;
      fb = fcand;
    } else {
      a = cand;
      fa = fcand;
    }
    if (std::abs(fx) <= cfg.abs_tol) return x;
    if (width_done(x)) return 0.5 * (a + b);
    if (std::abs(fx) > 0.5 * std::abs(f_prev)) {
      x_prev = x;
      f_prev = fx;
      x = 0.5 * (a + b);
      fx = f(x);
      if (!std::isfinite(fx)) throw std::domain_error("function not finite");
      if (fa * fx <= 0) {
        b = x;
        fb = fx;
      } else {
        a = x;
        fa = fx;
      }
      if (std::abs(fx) <= cfg.abs_tol) return x;
      if (width_done(x)) return 0.5 * (a + b);
    }
  }
  return 0.5 * (a + b);
}

MinimizeResult minimize_unimodal(const RealFn& f, double lo, double hi,
                                 const ToleranceConfig& cfg) {
  cfg.validate();
  if (!(lo < hi)) throw std::domain_error("empty minimization range");
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  if (!std::isfinite(fc) || !std::isfinite(fd))
    throw std::domain_error("objective not finite");
  for (int it = 0; it < cfg.max_iterations && (b - a) > cfg.rel_tol * (std::abs(a) + std::abs(b)) + cfg.abs_tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    if (!std::isfinite(fc) || !std::isfinite(fd))
      throw std::domain_error("objective not finite");
  }
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  if (!std::isfinite(fm)) throw std::domain_error("objective not finite");
  // The midpoint is within tolerance of the minimizer; report the best seen.
  if (fc <= fm && fc <= fd) return MinimizeResult{c, fc};
  if (fd <= fm) return MinimizeResult{d, fd};
  return MinimizeResult{xm, fm};
}

}  // namespace ihr
