#ifndef IHR_GRID_HPP
#define IHR_GRID_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace ihr {
namespace grid {

/// Evenly spaced grid including both endpoints (n >= 2).
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Serial reference kernel: values[i] = f(xs[i]).
std::vector<double> eval_serial(const std::vector<double>& xs,
                                const std::function<double(double)>& f);

/// OpenMP kernel. Produces the same values array as eval_serial; an
/// exception thrown by f is rethrown for the smallest offending index,
/// so failures are deterministic regardless of thread count.
std::vector<double> eval_parallel(const std::vector<double>& xs,
                                  const std::function<double(double)>& f);

/// Dispatch: parallel for large grids when OpenMP is available.
std::vector<double> eval(const std::vector<double>& xs,
                         const std::function<double(double)>& f);

struct MinResult {
  double x = 0;
  double value = 0;
  std::size_t index = 0;
};

// Reductions run serially over the stored values so results do not depend
// on the execution schedule. Ties break toward smaller x.
MinResult min_by(const std::vector<double>& xs, const std::vector<double>& values);
MinResult max_by(const std::vector<double>& xs, const std::vector<double>& values);

}  // namespace grid
}  // namespace ihr

#endif
