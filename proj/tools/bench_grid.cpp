// Compares the serial reference kernels against the OpenMP kernels on the
// three grid-heavy workloads: feasibility slack scans, trigamma curvature
// scans, and quadrature-backed hazard grids.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ihr/families.hpp"
#include "ihr/grid.hpp"
#include "ihr/mixture.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double run_ms(const std::function<std::vector<double>()>& job, std::vector<double>& out) {
  const auto t0 = Clock::now();
  out = job();
  const auto t1 = Clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void bench(const std::string& name, const std::vector<double>& xs,
           const std::function<double(double)>& f) {
  std::vector<double> a, b;
  const double ms_serial = run_ms([&] { return ihr::grid::eval_serial(xs, f); }, a);
  const double ms_parallel = run_ms([&] { return ihr::grid::eval_parallel(xs, f); }, b);
  double max_diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    max_diff = std::max(max_diff, std::abs(a[i] - b[i]));
  std::printf("%-28s %8zu pts   serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   max|diff| %g\n",
              name.c_str(), xs.size(), ms_serial, ms_parallel,
              ms_parallel > 0 ? ms_serial / ms_parallel : 0.0, max_diff);
}

}  // namespace

int main() {
#ifdef IHR_HAVE_OPENMP
  std::printf("OpenMP enabled\n");
#else
  std::printf("OpenMP not available: parallel kernels fall back to serial\n");
#endif

  const auto hc2 = ihr::make_family(ihr::FamilyKind::HyperbolicCosine(2.0));
  const double c = 0.9, d = 0.0;
  bench("hc2 slack scan", ihr::grid::linspace(-20.0, 20.0, 200001), [&](double x) {
    return std::cosh(c * x + d) - c * ihr::t_value(hc2, x);
  });

  const auto hc13 = ihr::make_family(ihr::FamilyKind::HyperbolicCosine(1.3));
  bench("hc1.3 trigamma curvature", ihr::grid::linspace(-30.0, 30.0, 100001),
        [&](double x) { return ihr::b_second(hc13, x); });

  const auto plan = ihr::build_plan(hc2, 0.0, 0.9, 0.0);
  const auto xs = ihr::grid::linspace(-10.0, 10.0, 2001);
  std::vector<double> idx(xs.size() - 1);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) idx[i] = static_cast<double>(i);
  bench("hc2 survival panels", idx, [&](double di) {
    const auto i = static_cast<std::size_t>(di);
    auto f = [&](double x) { return ihr::mixture_density(plan, x); };
    return ihr::integrate_adaptive(f, xs[i], xs[i + 1]).value;
  });
  return 0;
}
