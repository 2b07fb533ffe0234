#ifndef IHR_FAMILIES_HPP
#define IHR_FAMILIES_HPP

#include <optional>
#include <string>

#include "ihr/numerics.hpp"

namespace ihr {

enum class Family {
  normal,
  gamma,
  inverse_gaussian,
  hyperbolic_cosine,
  ressel,
  kummer,
};

/// One NEF generator with its parameters.
struct FamilyKind {
  Family family;
  double param1 = 0;  // sigma / alpha / kummer a
  double param2 = 0;  // kummer b

  static FamilyKind Normal(double sigma) { return {Family::normal, sigma, 0}; }
  static FamilyKind Gamma(double alpha) { return {Family::gamma, alpha, 0}; }
  static FamilyKind InverseGaussian(double alpha) { return {Family::inverse_gaussian, alpha, 0}; }
  static FamilyKind HyperbolicCosine(double alpha) { return {Family::hyperbolic_cosine, alpha, 0}; }
  static FamilyKind Ressel(double alpha) { return {Family::ressel, alpha, 0}; }
  static FamilyKind Kummer(double a, double b) { return {Family::kummer, a, b}; }

  double sigma() const { return param1; }
  double alpha() const { return param1; }
  double kummer_a() const { return param1; }
  double kummer_b() const { return param2; }
};

/// Growth of T(x) = 1/sqrt(b''(x)) along the support tails:
/// T(x) ~ C * e^{exp_rate |x|} * |x|^{poly_degree}. Only certified tails
/// may back a feasibility certificate beyond the scanned window.
struct TailGrowth {
  double exp_rate = 0;
  double poly_degree = 0;
  bool certified = false;
};

struct FamilyDescriptor {
  FamilyKind kind{Family::normal, 1, 0};
  double support_left = 0;  // -inf for normal and hyperbolic cosine
  double lambda_lo = 0;     // open natural-parameter interval (lambda_lo, lambda_hi)
  double lambda_hi = 0;
  std::string vf_text;
  std::string log_concavity_note;
  TailGrowth t_tail;
};

/// Certified upper bound on the positive root of the Ressel log-concavity
/// discriminant (alpha^3 + 3 alpha^2 - 4 alpha - 8); curvature is positive
/// for all x > 0 when alpha is in [1, kResselGlaserUpper].
inline constexpr double kResselGlaserUpper = 1.77846;

FamilyDescriptor make_family(const FamilyKind& kind);

bool lambda_in_domain(const FamilyDescriptor& fd, double lambda);

/// log of the generating density s(x); throws when x is outside the support.
double log_s(const FamilyDescriptor& fd, double x);

/// b(x) = -log s(x).
double b_value(const FamilyDescriptor& fd, double x);

/// First derivative of -log s for the literal generating density
/// (used by the hazard monotonicity functional).
double b_prime(const FamilyDescriptor& fd, double x);

/// Curvature evaluator backing the sufficient condition; per-family closed
/// forms. For Ressel this is the published series form
/// -(alpha-1)/x + (alpha-1)/x^2 + psi'(x+alpha+1), which differs from the
/// literal density's curvature except at alpha=2 (see verify::curvature_residual).
double b_second(const FamilyDescriptor& fd, double x);

/// T(x) = 1/sqrt(b''(x)); throws "density not log-concave at x" when b'' <= 0.
double t_value(const FamilyDescriptor& fd, double x);

/// Certified envelope with T(x) <= t_envelope(fd, x) on the support,
/// available when the tail is certified.
std::optional<double> t_envelope(const FamilyDescriptor& fd, double x);

/// Laplace transform L(lambda) of s on the natural domain.
double laplace(const FamilyDescriptor& fd, double lambda,
               const ToleranceConfig& cfg = {});

/// log L(lambda) (cumulant k(lambda)).
double log_laplace(const FamilyDescriptor& fd, double lambda,
                   const ToleranceConfig& cfg = {});

/// NEF member density e^{-lambda x} s(x) / L(lambda).
double nef_density(const FamilyDescriptor& fd, double lambda, double x,
                   const ToleranceConfig& cfg = {});

/// Family spec string, e.g. "hc:2" or "kummer:1:-2" (CLI syntax).
std::string family_spec(const FamilyKind& kind);
FamilyKind parse_family_spec(const std::string& spec);

}  // namespace ihr

#endif
