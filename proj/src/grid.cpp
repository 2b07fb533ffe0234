#include "ihr/grid.hpp"

#include <exception>
#include <limits>
#include <stdexcept>

#ifdef IHR_HAVE_OPENMP
#include <omp.h>
#endif

namespace ihr {
namespace grid {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw std::domain_error("linspace needs at least 2 points");
  std::vector<double> xs(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) xs[i] = lo + step * static_cast<double>(i);
  xs.back() = hi;
  return xs;
}

std::vector<double> eval_serial(const std::vector<double>& xs,
                                const std::function<double(double)>& f) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
  return out;
}

std::vector<double> eval_parallel(const std::vector<double>& xs,
                                  const std::function<double(double)>& f) {
#ifdef IHR_HAVE_OPENMP
  std::vector<double> out(xs.size());
  std::exception_ptr err;
  std::size_t err_index = std::numeric_limits<std::size_t>::max();
  const long long n = static_cast<long long>(xs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(ihr_grid_err)
      {
        if (static_cast<std::size_t>(i) < err_index) {
          err_index = static_cast<std::size_t>(i);
          err = std::current_exception();
        }
      }
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
#else
  return eval_serial(xs, f);
#endif
}

std::vector<double> eval(const std::vector<double>& xs,
                         const std::function<double(double)>& f) {
#ifdef IHR_HAVE_OPENMP
  if (xs.size() >= 64) return eval_parallel(xs, f);
#endif
  return eval_serial(xs, f);
}

MinResult min_by(const std::vector<double>& xs, const std::vector<double>& values) {
  if (xs.empty() || xs.size() != values.size())
    throw std::domain_error("min_by: mismatched grid");
  MinResult best{xs[0], values[0], 0};
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < best.value) best = MinResult{xs[i], values[i], i};
  }
  return best;
}

MinResult max_by(const std::vector<double>& xs, const std::vector<double>& values) {
  if (xs.empty() || xs.size() != values.size())
    throw std::domain_error("max_by: mismatched grid");
  MinResult best{xs[0], values[0], 0};
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > best.value) best = MinResult{xs[i], values[i], i};
  }
  return best;
}

}  // namespace grid
}  // namespace ihr
