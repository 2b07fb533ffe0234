#ifndef IHR_MIXTURE_HPP
#define IHR_MIXTURE_HPP

#include <string>
#include <vector>

#include "ihr/families.hpp"
#include "ihr/numerics.hpp"

namespace ihr {

/// Two-point mixture over the natural parameter: nu = p delta_{l1} + (1-p) delta_{l2}.
/// Derived quantities follow c = (l2-l1)/2, d = log sqrt(p1/p2) with
/// p1 = p e^{-k(l1)}, p2 = (1-p) e^{-k(l2)}.
struct MixturePlan {
  FamilyDescriptor family;
  double lambda1 = 0;
  double lambda2 = 0;
  double p = 0;
  double p1 = 0;
  double p2 = 0;
  double c = 0;
  double d = 0;
};

enum class Verdict { feasible, infeasible, unknown };
enum class Method { analytic, numeric };

std::string to_string(Verdict v);
std::string to_string(Method m);

struct FeasibilityReport {
  Method method = Method::analytic;
  Verdict verdict = Verdict::unknown;
  double min_slack = 0;   // min over checked x of cosh(cx+d) - c T(x)
  double witness_x = 0;   // argmin, or the violation point
  std::vector<std::string> notes;
};

struct HazardReport {
  std::vector<double> xs;
  std::vector<double> hazard;
  bool monotone = false;
  double max_drop = 0;
  double drop_location = 0;
  bool has_drop = false;
  // secondary diagnostic: min over the grid of (log f)'(x) + h(x),
  // which is h'(x)/h(x)
  double min_functional = 0;
  double functional_argmin = 0;
};

/// Mixing coefficient from the midpoint form: lambda1 = mid - c, lambda2 = mid + c,
/// p = e^d L(l1) / (e^d L(l1) + e^{-d} L(l2)).
MixturePlan build_plan(const FamilyDescriptor& fd, double lambda_mid, double c,
                       double d, const ToleranceConfig& cfg = {});

/// Same plan from (lambda1, lambda2, p); derives (c, d, p1, p2).
MixturePlan build_plan_from_weights(const FamilyDescriptor& fd, double lambda1,
                                    double lambda2, double p,
                                    const ToleranceConfig& cfg = {});

/// Closed-region decision per family (normal, gamma, hyperbolic cosine 1 and 2,
/// Ressel 1, Kummer a=1). Families without a published region return unknown.
FeasibilityReport feasibility_analytic(const FamilyDescriptor& fd, double c, double d);

/// Grid scan of the slack cosh(cx+d) - c T(x) over a certified window plus a
/// tail certificate from the family's T-envelope and tail growth.
FeasibilityReport feasibility_numeric(const FamilyDescriptor& fd, double c, double d,
                                      const ToleranceConfig& cfg = {});

/// p nef(l1, x) + (1-p) nef(l2, x).
double mixture_density(const MixturePlan& plan, double x,
                       const ToleranceConfig& cfg = {});

/// Same density through the s(x) R(x) factorization (independent code path).
double mixture_density_sr(const MixturePlan& plan, double x);

/// Mixture survival S(x) = p S1(x) + (1-p) S2(x); closed forms for normal,
/// gamma and integer-B Kummer components, adaptive quadrature otherwise.
double survival(const MixturePlan& plan, double x, const ToleranceConfig& cfg = {});

/// Hazard rate f(x)/S(x).
double hazard(const MixturePlan& plan, double x, const ToleranceConfig& cfg = {});

struct HazardTable {
  std::vector<double> density;
  std::vector<double> survival;
  std::vector<double> hazard;
};

/// Density/survival/hazard on an ascending grid. Quadrature-backed families
/// reuse a single right-tail integral plus per-interval panels (computed in
/// parallel, reduced deterministically).
HazardTable hazard_table(const MixturePlan& plan, const std::vector<double>& xs,
                         const ToleranceConfig& cfg = {});

std::vector<double> hazard_grid(const MixturePlan& plan, const std::vector<double>& xs,
                                const ToleranceConfig& cfg = {});

/// (log f)'(x) for the mixture density (analytic, from b' and the lambdas).
double log_density_derivative(const MixturePlan& plan, double x);

// erratum note strings shared by reports and the verification suite
inline constexpr const char* kErratum1 = "ERRATUM 1: Lemma 7 k-bound";
inline constexpr const char* kErratum2 = "ERRATUM 2: Prop. 9 constant";
inline constexpr const char* kErratum3 = "ERRATUM 3: Prop. 12 inequality direction";
inline constexpr const char* kErratum4 = "ERRATUM 4: Ressel curvature formula";
inline constexpr const char* kErratum5 = "ERRATUM 5: Prop. 3 tangency constant";

}  // namespace ihr

#endif
