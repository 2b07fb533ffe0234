#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ihr/families.hpp"
#include "ihr/grid.hpp"
#include "ihr/specfun.hpp"
#include "oracles.hpp"

using namespace ihr;
namespace {
constexpr double kPi = 3.141592653589793238462643;
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("descriptors carry the right domains") {
  const auto hc2 = make_family(FamilyKind::HyperbolicCosine(2.0));
  CHECK(hc2.lambda_lo == doctest::Approx(-kPi / 2));
  CHECK(hc2.lambda_hi == doctest::Approx(kPi / 2));
  CHECK(std::isinf(hc2.support_left));

  const auto g1 = make_family(FamilyKind::Gamma(1.0));
  CHECK(g1.log_concavity_note.find("degenerate") != std::string::npos);

  const auto n1 = make_family(FamilyKind::Normal(1.0));
  CHECK(std::isinf(n1.lambda_lo));
  CHECK(std::isinf(n1.lambda_hi));
  CHECK(std::isinf(n1.support_left));

  CHECK_THROWS_AS(make_family(FamilyKind::Normal(-1.0)), std::domain_error);
  CHECK_THROWS_AS(make_family(FamilyKind::Ressel(0.0)), std::domain_error);
  CHECK_THROWS_AS(make_family(FamilyKind::Kummer(-0.5, -2.0)), std::domain_error);
}

TEST_CASE("tail growth table") {
  CHECK(make_family(FamilyKind::Normal(2.0)).t_tail.exp_rate == 0.0);
  CHECK(make_family(FamilyKind::Gamma(2.0)).t_tail.poly_degree == 1.0);
  const auto hc1 = make_family(FamilyKind::HyperbolicCosine(1.0));
  CHECK(hc1.t_tail.exp_rate == doctest::Approx(kPi / 2));
  CHECK(hc1.t_tail.certified);
  CHECK_FALSE(make_family(FamilyKind::HyperbolicCosine(1.3)).t_tail.certified);
  CHECK(make_family(FamilyKind::Ressel(1.0)).t_tail.poly_degree == 0.5);
  CHECK(make_family(FamilyKind::Kummer(1.0, -2.0)).t_tail.poly_degree == 1.0);
}

TEST_CASE("curvature closed forms") {
  CHECK(b_second(make_family(FamilyKind::Normal(2.0)), 3.7) == doctest::Approx(0.25));

  // Ressel series curvature at x -> 0+ leaves psi'(2)
  const auto r1 = make_family(FamilyKind::Ressel(1.0));
  CHECK(b_second(r1, 1e-9) == doctest::Approx(0.6449340668482264).epsilon(1e-9));

  // hyperbolic cosine, alpha = 2 near zero: pi^2/12 = psi'(1)/2
  const auto hc2 = make_family(FamilyKind::HyperbolicCosine(2.0));
  CHECK(b_second(hc2, 0.0) == doctest::Approx(kPi * kPi / 12).epsilon(1e-12));
  CHECK(b_second(hc2, 1e-6) == doctest::Approx(kPi * kPi / 12).epsilon(1e-9));

  CHECK(b_second(make_family(FamilyKind::Kummer(1.0, -2.0)), 1.0) == doctest::Approx(0.25));

  CHECK_THROWS_WITH_AS(b_second(r1, -1.0), "x outside support", std::domain_error);
}

TEST_CASE("hyperbolic cosine closed forms match the trigamma route") {
  for (double alpha : {1.0, 2.0}) {
    const auto fd = make_family(FamilyKind::HyperbolicCosine(alpha));
    for (int i = -100; i <= 100; ++i) {
      const double x = i / 10.0;
      const double closed = b_second(fd, x);
      const double trig =
          0.5 * specfun::trigamma(specfun::Complex(alpha / 2, x / 2)).real();
      CHECK(std::abs(closed - trig) <= 1e-9);
    }
  }
}

TEST_CASE("t_value values and the log-concavity error") {
  CHECK(t_value(make_family(FamilyKind::Normal(1.5)), -4.2) == doctest::Approx(1.5));
  CHECK(t_value(make_family(FamilyKind::Gamma(2.0)), 3.0) == doctest::Approx(3.0));
  CHECK(t_value(make_family(FamilyKind::HyperbolicCosine(1.0)), 0.0) ==
        doctest::Approx(2.0 / kPi).epsilon(1e-12));
  const auto ig = make_family(FamilyKind::InverseGaussian(1.0));
  CHECK_THROWS_WITH_AS(t_value(ig, 5.0), "density not log-concave at x", std::domain_error);
}

TEST_CASE("inverse gaussian curvature changes sign once, at 2 alpha^2 / 3") {
  for (double alpha : {1.0, 2.0}) {
    const auto fd = make_family(FamilyKind::InverseGaussian(alpha));
    const double flip = 2.0 * alpha * alpha / 3.0;
    CHECK(b_second(fd, 0.9 * flip) > 0);
    CHECK(b_second(fd, 1.1 * flip) < 0);
    // bisect the analytic formula's root
    const double root = oracles::bisect(
        [&](double x) { return b_second(fd, x); }, 0.5 * flip, 2.0 * flip, 1e-12);
    CHECK(root == doctest::Approx(flip).epsilon(1e-10));
  }
}

TEST_CASE("hyperbolic cosine alpha=0.5 is negative inside the predicted interval") {
  const auto fd = make_family(FamilyKind::HyperbolicCosine(0.5));
  const double lo = 0.5 * std::sqrt(2.5 / 1.5);
  const double hi = 2.5 / std::sqrt(3.0);
  CHECK(lo == doctest::Approx(0.6454972244).epsilon(1e-9));
  CHECK(hi == doctest::Approx(1.4433756730).epsilon(1e-9));
  CHECK(b_second(fd, 0.5 * (lo + hi)) < 0);
}

TEST_CASE("the Lemma-6 style envelope dominates T with equality at zero") {
  const auto hc2 = make_family(FamilyKind::HyperbolicCosine(2.0));
  const auto xs = grid::linspace(-20.0, 20.0, 2001);
  for (double x : xs) {
    const double env = *t_envelope(hc2, x);
    CHECK(t_value(hc2, x) <= env * (1 + 1e-12));
  }
  CHECK(t_value(hc2, 0.0) == doctest::Approx(*t_envelope(hc2, 0.0)).epsilon(1e-12));
  CHECK(t_value(hc2, 0.0) == doctest::Approx(2.0 * std::sqrt(3.0) / kPi).epsilon(1e-12));
}

TEST_CASE("envelopes dominate T for the other certified families") {
  for (auto kind : {FamilyKind::Gamma(2.0), FamilyKind::Ressel(1.0),
                    FamilyKind::Ressel(1.5), FamilyKind::Kummer(1.0, -2.0),
                    FamilyKind::Kummer(2.0, -1.0)}) {
    const auto fd = make_family(kind);
    for (double x = 0.01; x < 60.0; x *= 1.4) {
      const auto env = t_envelope(fd, x);
      REQUIRE(env.has_value());
      CHECK(t_value(fd, x) <= *env * (1 + 1e-12));
    }
  }
}

TEST_CASE("laplace closed forms") {
  CHECK(laplace(make_family(FamilyKind::Normal(1.0)), 1.0) ==
        doctest::Approx(std::exp(0.5)).epsilon(1e-13));
  CHECK(laplace(make_family(FamilyKind::HyperbolicCosine(2.0)), 1.0) ==
        doctest::Approx(3.42551882081476).epsilon(1e-12));
  CHECK(laplace(make_family(FamilyKind::Ressel(1.0)), 1.0) ==
        doctest::Approx(0.3178444328993727).epsilon(1e-10));
  CHECK(laplace(make_family(FamilyKind::Kummer(1.0, -2.0)), 1.0) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(laplace(make_family(FamilyKind::Gamma(3.0)), 2.0) ==
        doctest::Approx(0.125).epsilon(1e-13));
  CHECK(laplace(make_family(FamilyKind::InverseGaussian(1.0)), 0.7) ==
        doctest::Approx(std::exp(-std::sqrt(1.4))).epsilon(1e-13));
}

TEST_CASE("laplace domain handling") {
  const auto gamma2 = make_family(FamilyKind::Gamma(2.0));
  CHECK_THROWS_WITH_AS(laplace(gamma2, 0.0), "outside natural parameter domain",
                       std::domain_error);
  CHECK_THROWS_AS(laplace(make_family(FamilyKind::HyperbolicCosine(1.0)), 1.6),
                  std::domain_error);
  // the boundary lambda = 0 is accepted where L(0) is finite
  CHECK(laplace(make_family(FamilyKind::Ressel(1.0)), 0.0) == doctest::Approx(1.0));
  CHECK(laplace(make_family(FamilyKind::InverseGaussian(1.0)), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("laplace transforms agree with quadrature across families") {
  struct Probe {
    FamilyKind kind;
    std::vector<double> lambdas;
    double tol;
  };
  const std::vector<Probe> probes = {
      {FamilyKind::Normal(1.0), {-1.0, -0.3, 0.2, 0.8, 1.5}, 1e-7},
      {FamilyKind::Gamma(3.0), {0.5, 1.0, 2.0, 3.0, 5.0}, 1e-7},
      {FamilyKind::InverseGaussian(1.0), {0.3, 0.7, 1.0, 2.0, 4.0}, 1e-7},
      {FamilyKind::HyperbolicCosine(2.0), {-1.2, -0.7, 0.0, 0.7, 1.2}, 1e-7},
      {FamilyKind::HyperbolicCosine(1.0), {-1.0, 0.0, 1.0}, 1e-7},
      {FamilyKind::Ressel(1.0), {0.3, 0.5, 1.0, 2.0, 4.0}, 1e-6},
      {FamilyKind::Ressel(1.5), {0.5, 1.0, 2.0}, 1e-6},
      {FamilyKind::Kummer(1.0, -2.0), {0.5, 1.0, 2.0, 3.0, 5.0}, 1e-7},
      {FamilyKind::Kummer(1.0, -2.5), {0.5, 1.0, 2.0}, 1e-7},
      {FamilyKind::Kummer(2.0, -1.5), {0.5, 1.0, 2.0}, 1e-7},
  };
  for (const auto& probe : probes) {
    const auto fd = make_family(probe.kind);
    for (double lam : probe.lambdas) {
      const double closed = laplace(fd, lam);
      auto f = [&](double x) { return std::exp(-lam * x + log_s(fd, x)); };
      const double lo = std::isinf(fd.support_left) ? -kInf : 1e-300;
      const double quad = integrate_adaptive(f, lo, kInf).value;
      CHECK(std::abs(quad - closed) / closed <= probe.tol);
    }
  }
}

TEST_CASE("nef densities") {
  const auto g2 = make_family(FamilyKind::Gamma(2.0));
  for (double x : {0.2, 1.0, 4.0})
    CHECK(nef_density(g2, 1.0, x) == doctest::Approx(x * std::exp(-x)).epsilon(1e-12));

  CHECK(nef_density(make_family(FamilyKind::Normal(1.0)), 0.0, 0.0) ==
        doctest::Approx(1.0 / std::sqrt(2 * kPi)).epsilon(1e-13));

  const auto hc2 = make_family(FamilyKind::HyperbolicCosine(2.0));
  auto f = [&](double x) { return nef_density(hc2, 0.5, x); };
  CHECK(integrate_adaptive(f, -kInf, kInf).value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("ressel density evaluates in log space down to the edge") {
  const auto r1 = make_family(FamilyKind::Ressel(1.0));
  // s1(0+) = 1/Gamma(2) = 1
  CHECK(std::exp(log_s(r1, 1e-12)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::exp(log_s(r1, 1.0)) == doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("b_prime matches the finite-difference gradient of -log s") {
  struct Probe {
    FamilyKind kind;
    std::vector<double> xs;
  };
  const std::vector<Probe> probes = {
      {FamilyKind::Normal(1.3), {-2.0, 0.1, 3.0}},
      {FamilyKind::Gamma(2.5), {0.4, 2.0, 9.0}},
      {FamilyKind::InverseGaussian(1.0), {0.3, 1.0, 4.0}},
      {FamilyKind::HyperbolicCosine(1.0), {-2.0, 0.03, 1.5}},
      {FamilyKind::HyperbolicCosine(2.0), {-2.0, 0.03, 0.5, 4.0}},
      {FamilyKind::HyperbolicCosine(1.3), {-1.0, 0.8, 5.0}},
      {FamilyKind::Ressel(1.0), {0.4, 2.0, 9.0}},
      {FamilyKind::Ressel(1.5), {0.4, 2.0}},
      {FamilyKind::Kummer(1.5, -2.0), {0.4, 2.0, 9.0}},
  };
  for (const auto& probe : probes) {
    const auto fd = make_family(probe.kind);
    for (double x : probe.xs) {
      const double h = 1e-5 * std::max(1.0, std::abs(x));
      const double fdiff =
          (b_value(fd, x - 2 * h) - 8 * b_value(fd, x - h) + 8 * b_value(fd, x + h) -
           b_value(fd, x + 2 * h)) /
          (12 * h);
      INFO(family_spec(probe.kind), " x=", x);
      CHECK(b_prime(fd, x) == doctest::Approx(fdiff).epsilon(1e-7));
    }
  }
}

TEST_CASE("family spec strings round trip") {
  for (const auto& spec : {"normal:1.5", "gamma:2", "ig:1", "hc:0.5", "ressel:1.77",
                           "kummer:1:-2"}) {
    const auto kind = parse_family_spec(spec);
    const auto back = parse_family_spec(family_spec(kind));
    CHECK(back.family == kind.family);
    CHECK(back.param1 == kind.param1);
    CHECK(back.param2 == kind.param2);
  }
  CHECK_THROWS_AS(parse_family_spec("nosuch:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family_spec("gamma"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family_spec("kummer:1"), std::invalid_argument);
}
