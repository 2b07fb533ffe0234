#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ihr/grid.hpp"

using namespace ihr;

TEST_CASE("linspace hits both endpoints") {
  const auto xs = grid::linspace(-1.0, 2.0, 7);
  CHECK(xs.size() == 7);
  CHECK(xs.front() == -1.0);
  CHECK(xs.back() == 2.0);
  CHECK(xs[2] == doctest::Approx(0.0));
}

TEST_CASE("parallel kernel reproduces the serial reference bit for bit") {
  const auto xs = grid::linspace(-20.0, 20.0, 5001);
  auto f = [](double x) { return std::cosh(0.3 * x) - 0.3 * std::exp(std::sin(x)); };
  const auto a = grid::eval_serial(xs, f);
  const auto b = grid::eval_parallel(xs, f);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("min_by breaks ties toward smaller x") {
  const std::vector<double> xs = {0.0, 1.0, 2.0, 3.0};
  const std::vector<double> vs = {5.0, 1.0, 1.0, 4.0};
  const auto m = grid::min_by(xs, vs);
  CHECK(m.x == 1.0);
  CHECK(m.index == 1);
}

TEST_CASE("parallel kernel rethrows for the smallest failing index") {
  const auto xs = grid::linspace(0.0, 10.0, 1001);
  auto f = [](double x) -> double {
    if (x > 3.0) throw std::domain_error("fail at " + std::to_string(x));
    return x;
  };
  std::string what;
  try {
    grid::eval_parallel(xs, f);
  } catch (const std::domain_error& e) {
    what = e.what();
  }
  // first failing grid point is the first x > 3
  CHECK(what.substr(0, 13) == "fail at 3.010");
}

TEST_CASE("dispatching eval matches serial on small and large grids") {
  auto f = [](double x) { return std::sin(x) * x; };
  for (std::size_t n : {5u, 500u}) {
    const auto xs = grid::linspace(0.0, 3.0, n);
    const auto a = grid::eval(xs, f);
    const auto b = grid::eval_serial(xs, f);
    for (std::size_t i = 0; i < n; ++i) CHECK(a[i] == b[i]);
  }
}
