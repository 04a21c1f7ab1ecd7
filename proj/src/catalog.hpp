#pragma once
// Catalog of scalar nonlinearities with the analytic constants the embedding
// theory needs, plus grid-based verifiers for the three regularity conditions:
//
//   Condition 1 (bounded curvature): sup |f''| <= a, finitely many f'' jumps.
//   Condition 2 (linear asymptotes): for |x| >= c/eps^b the function is within
//     eps of d1*x+e1 (right) / d2*x+e2 (left).
//   Condition 3 (linear near origin): |y| <= g1 implies
//     |g2 * f^{-1}(y) - y| <= g3 * y^2.
//
// Verification is empirical on dense grids with explicit tolerances; analytic
// argmax positions are frozen in the tests as oracles.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nlse {

struct AsymptoteConstants {
  double d1, e1;  // right ray d1*x + e1
  double d2, e2;  // left ray d2*x + e2
};

struct ConditionConstants {
  double a;  // curvature bound, > 0
  double b;  // asymptote onset exponent, > 0
  double c;  // asymptote onset scale, > 0
  AsymptoteConstants asym;
  std::optional<std::array<double, 3>> g;  // {g1, g2, g3} when Condition 3 is claimed
};

struct Nonlinearity {
  std::string name;
  double (*value)(double);
  double (*derivative)(double);         // right-derivative at kinks
  double (*second_derivative)(double);  // right-continuous at jump points
  std::vector<double> second_derivative_discontinuities;
  ConditionConstants cc;
  // Alternate printed asymptote coefficients seen in common write-ups of these
  // fixtures; inconsistent with the actual limits, kept only for cross-checks.
  std::optional<AsymptoteConstants> quoted_asymptotes;
  double (*inverse)(double) = nullptr;  // defined on (inverse_lo, inverse_hi)
  double inverse_lo = 0.0, inverse_hi = 0.0;
  std::optional<double> bound;  // u with |f| <= u everywhere, when bounded
  bool affine = false;          // exactly linear (identity)

  bool claims_condition3() const { return cc.g.has_value() && inverse != nullptr; }
};

// Static catalog; pointers stay valid for the program lifetime.
const std::vector<const Nonlinearity*>& catalog();
const Nonlinearity* find_nonlinearity(std::string_view name);  // nullptr if unknown

struct Grid {
  double lo = -50.0;
  double hi = 50.0;
  double spacing = 1e-3;
};

struct CertResult {
  std::string fixture;
  int condition = 0;
  double eps = 0.0;  // NaN when the condition has no eps parameter (1 and 3)
  double claimed = 0.0;
  double observed = 0.0;  // sup of the checked quantity over the grid
  double argmax = 0.0;
  bool pass = false;
  bool has_violation = false;  // first grid point exceeding the bound
  double violation_x = 0.0;
  double violation_value = 0.0;
};

// Scans |f''| on the grid (plus every listed jump point +- spacing), then does
// a refinement pass at spacing 1e-5 in a +-0.1 window around the coarse
// argmax.  Pass means no grid point exceeds claimed_a + 1e-6.
CertResult verify_condition1(const Nonlinearity& nl, double claimed_a, const Grid& grid = {});

// Samples [c/eps^b, 10*c/eps^b] and the mirrored left range with
// samples_per_side points each; checks the respective asymptote gap <= eps.
CertResult verify_condition2(const Nonlinearity& nl, double eps, int samples_per_side = 4096);

// Grid over [-g1, g1] \ {0} with the given spacing; checks
// |g2*f^{-1}(y) - y| <= g3*y^2 + 1e-10 and reports the sup of the ratio
// |g2*f^{-1}(y) - y| / y^2.  Errors if the fixture does not claim Condition 3.
CertResult verify_condition3(const Nonlinearity& nl, double spacing = 1e-4);

}  // namespace nlse
