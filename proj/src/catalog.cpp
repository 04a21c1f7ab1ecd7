#include "catalog.hpp"

#include <cmath>
#include <limits>

#include "error.hpp"

namespace nlse {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kPi = 4.0 * std::atan(1.0);

// ==== fixture scalar functions ==============================================

double sigmoid_v(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double sigmoid_d(double x) {
  const double s = sigmoid_v(x);
  return s * (1.0 - s);
}
double sigmoid_d2(double x) {
  const double s = sigmoid_v(x);
  return s * (1.0 - s) * (1.0 - 2.0 * s);
}

double softplus_v(double x) { return std::log1p(std::exp(-std::fabs(x))) + std::fmax(x, 0.0); }
double softplus_d(double x) { return sigmoid_v(x); }
double softplus_d2(double x) { return sigmoid_d(x); }

double gauss_v(double x) { return std::exp(-x * x); }
double gauss_d(double x) { return -2.0 * x * std::exp(-x * x); }
double gauss_d2(double x) { return (4.0 * x * x - 2.0) * std::exp(-x * x); }

double tanh_v(double x) { return std::tanh(x); }
double tanh_d(double x) {
  const double t = std::tanh(x);
  return 1.0 - t * t;
}
double tanh_d2(double x) {
  const double t = std::tanh(x);
  return -2.0 * t * (1.0 - t * t);
}
double tanh_inv(double y) { return std::atanh(y); }

double elu_v(double x) { return x >= 0.0 ? x : std::expm1(x); }
double elu_d(double x) { return x >= 0.0 ? 1.0 : std::exp(x); }
double elu_d2(double x) { return x >= 0.0 ? 0.0 : std::exp(x); }
double elu_inv(double y) { return y >= 0.0 ? y : std::log1p(y); }

double arctan_v(double x) { return std::atan(x); }
double arctan_d(double x) { return 1.0 / (1.0 + x * x); }
double arctan_d2(double x) {
  const double q = 1.0 + x * x;
  return -2.0 * x / (q * q);
}
double arctan_inv(double y) { return std::tan(y); }

double softsign_v(double x) { return x / (1.0 + std::fabs(x)); }
double softsign_d(double x) {
  const double q = 1.0 + std::fabs(x);
  return 1.0 / (q * q);
}
double softsign_d2(double x) {
  // Jumps from +2 to -2 across x = 0; right-continuous here.
  if (x >= 0.0) {
    const double q = 1.0 + x;
    return -2.0 / (q * q * q);
  }
  const double q = 1.0 - x;
  return 2.0 / (q * q * q);
}
double softsign_inv(double y) { return y / (1.0 - std::fabs(y)); }

double sqnl_v(double x) {
  if (x >= 2.0) return 1.0;
  if (x >= 0.0) return x - x * x / 4.0;
  if (x >= -2.0) return x + x * x / 4.0;
  return -1.0;
}
double sqnl_d(double x) {
  if (x >= 2.0) return 0.0;
  if (x >= 0.0) return 1.0 - x / 2.0;
  if (x >= -2.0) return 1.0 + x / 2.0;
  return 0.0;
}
double sqnl_d2(double x) {
  if (x >= 2.0) return 0.0;
  if (x >= 0.0) return -0.5;
  if (x >= -2.0) return 0.5;
  return 0.0;
}
double sqnl_inv(double y) {
  return y >= 0.0 ? 2.0 - 2.0 * std::sqrt(1.0 - y) : -2.0 + 2.0 * std::sqrt(1.0 + y);
}

double identity_v(double x) { return x; }
double identity_d(double) { return 1.0; }
double identity_d2(double) { return 0.0; }
double identity_inv(double y) { return y; }

// ==== catalog table =========================================================

const std::vector<Nonlinearity> kCatalog = [] {
  std::vector<Nonlinearity> v;

  v.push_back({"sigmoid", sigmoid_v, sigmoid_d, sigmoid_d2, {},
               {1.0 / (6.0 * std::sqrt(3.0)), 1.0, 1.0, {0.0, 1.0, 0.0, 0.0}, std::nullopt},
               AsymptoteConstants{1.0, 0.0, 0.0, 0.0},  // quoted variant: d/e roles swapped
               nullptr, 0.0, 0.0, 1.0, false});

  v.push_back({"softplus", softplus_v, softplus_d, softplus_d2, {},
               {0.25, 1.0, 1.0, {1.0, 0.0, 0.0, 0.0}, std::nullopt},
               AsymptoteConstants{0.0, 1.0, 0.0, 0.0},  // quoted variant: d/e roles swapped
               nullptr, 0.0, 0.0, std::nullopt, false});

  v.push_back({"gaussian", gauss_v, gauss_d, gauss_d2, {},
               {2.0, 1.0, 1.0, {0.0, 0.0, 0.0, 0.0}, std::nullopt},
               std::nullopt, nullptr, 0.0, 0.0, 1.0, false});

  v.push_back({"tanh", tanh_v, tanh_d, tanh_d2, {},
               {4.0 / (3.0 * std::sqrt(3.0)), 1.0, 1.0, {0.0, 1.0, 0.0, -1.0},
                std::array<double, 3>{0.5, 1.0, 0.2}},
               std::nullopt, tanh_inv, -1.0, 1.0, 1.0, false});

  v.push_back({"elu", elu_v, elu_d, elu_d2, {0.0},
               {1.0, 1.0, 1.0, {1.0, 0.0, 0.0, -1.0}, std::array<double, 3>{0.5, 1.0, 1.0}},
               std::nullopt, elu_inv, -1.0, 1e300, std::nullopt, false});

  v.push_back({"arctan", arctan_v, arctan_d, arctan_d2, {},
               {3.0 * std::sqrt(3.0) / 8.0, 1.0, 1.0, {0.0, kPi / 2.0, 0.0, -kPi / 2.0},
                std::array<double, 3>{1.0, 1.0, 0.56}},
               std::nullopt, arctan_inv, -kPi / 2.0, kPi / 2.0, kPi / 2.0, false});

  v.push_back({"softsign", softsign_v, softsign_d, softsign_d2, {0.0},
               {2.0, 1.0, 1.0, {0.0, 1.0, 0.0, -1.0}, std::array<double, 3>{0.5, 1.0, 2.0}},
               std::nullopt, softsign_inv, -1.0, 1.0, 1.0, false});

  v.push_back({"sqnl", sqnl_v, sqnl_d, sqnl_d2, {-2.0, 0.0, 2.0},
               {0.5, 1.0, 1.0, {0.0, 1.0, 0.0, -1.0}, std::array<double, 3>{0.5, 1.0, 1.0}},
               std::nullopt, sqnl_inv, -1.0, 1.0, 1.0, false});

  // Affine reference fixture; a is a positive placeholder (f'' == 0).
  v.push_back({"identity", identity_v, identity_d, identity_d2, {},
               {1e-9, 1.0, 1.0, {1.0, 0.0, 1.0, 0.0}, std::array<double, 3>{1.0, 1.0, 0.0}},
               std::nullopt, identity_inv, -1e300, 1e300, std::nullopt, true});

  return v;
}();

const std::vector<const Nonlinearity*> kCatalogPtrs = [] {
  std::vector<const Nonlinearity*> p;
  for (const auto& nl : kCatalog) p.push_back(&nl);
  return p;
}();

// Grid walk by index so point positions do not accumulate rounding.
template <typename Fn>
void walk_grid(double lo, double hi, double spacing, const std::vector<double>& extra, Fn&& fn) {
  const long long n = static_cast<long long>(std::ceil((hi - lo) / spacing));
  for (long long i = 0; i <= n; ++i) {
    const double x = (i == n) ? hi : lo + static_cast<double>(i) * spacing;
    fn(x);
  }
  for (double x : extra)
    if (x >= lo && x <= hi) fn(x);
}

struct SupTracker {
  double sup = -std::numeric_limits<double>::infinity();
  double argmax = 0.0;
  void feed(double x, double v) {
    if (v > sup) {
      sup = v;
      argmax = x;
    }
  }
};

}  // namespace

const std::vector<const Nonlinearity*>& catalog() { return kCatalogPtrs; }

const Nonlinearity* find_nonlinearity(std::string_view name) {
  for (const auto* nl : kCatalogPtrs)
    if (nl->name == name) return nl;
  return nullptr;
}

CertResult verify_condition1(const Nonlinearity& nl, double claimed_a, const Grid& grid) {
  require(grid.spacing > 0.0 && grid.spacing <= 1e-3, Errc::precondition,
          "condition-1 grid spacing must be in (0, 1e-3]");
  require(grid.hi > grid.lo, Errc::precondition, "condition-1 grid is empty");

  CertResult r;
  r.fixture = nl.name;
  r.condition = 1;
  r.eps = kNaN;
  r.claimed = claimed_a;
  const double tol = 1e-6;

  std::vector<double> extra;
  for (double d : nl.second_derivative_discontinuities) {
    extra.push_back(d - grid.spacing);
    extra.push_back(d);
    extra.push_back(d + grid.spacing);
  }

  SupTracker coarse;
  auto feed = [&](SupTracker& t, double x) {
    const double v = std::fabs(nl.second_derivative(x));
    t.feed(x, v);
    if (!r.has_violation && v > claimed_a + tol) {
      r.has_violation = true;
      r.violation_x = x;
      r.violation_value = v;
    }
  };
  walk_grid(grid.lo, grid.hi, grid.spacing, extra, [&](double x) { feed(coarse, x); });

  // Refinement pass around the coarse argmax.
  SupTracker fine = coarse;
  walk_grid(coarse.argmax - 0.1, coarse.argmax + 0.1, 1e-5, extra,
            [&](double x) { feed(fine, x); });

  r.observed = fine.sup;
  r.argmax = fine.argmax;
  r.pass = !r.has_violation;
  return r;
}

CertResult verify_condition2(const Nonlinearity& nl, double eps, int samples_per_side) {
  require(eps > 0.0, Errc::precondition, "condition-2 eps must be positive");
  require(samples_per_side >= 2, Errc::precondition, "condition-2 needs at least 2 samples");

  CertResult r;
  r.fixture = nl.name;
  r.condition = 2;
  r.eps = eps;
  r.claimed = eps;

  const auto& cc = nl.cc;
  const double onset = cc.c / std::pow(eps, cc.b);
  SupTracker t;
  auto feed = [&](double x, double gap) {
    t.feed(x, gap);
    if (!r.has_violation && gap > eps) {
      r.has_violation = true;
      r.violation_x = x;
      r.violation_value = gap;
    }
  };
  for (int i = 0; i < samples_per_side; ++i) {
    const double frac = static_cast<double>(i) / (samples_per_side - 1);
    const double x = onset * (1.0 + 9.0 * frac);  // [onset, 10*onset]
    feed(x, std::fabs(nl.value(x) - (cc.asym.d1 * x + cc.asym.e1)));
    feed(-x, std::fabs(nl.value(-x) - (cc.asym.d2 * -x + cc.asym.e2)));
  }

  r.observed = t.sup;
  r.argmax = t.argmax;
  r.pass = !r.has_violation;
  return r;
}

CertResult verify_condition3(const Nonlinearity& nl, double spacing) {
  require(nl.claims_condition3(), Errc::precondition,
          nl.name + " does not provide an inverse / near-origin constants");
  require(spacing > 0.0 && spacing <= 1e-4, Errc::precondition,
          "condition-3 grid spacing must be in (0, 1e-4]");

  const auto [g1, g2, g3] = *nl.cc.g;
  CertResult r;
  r.fixture = nl.name;
  r.condition = 3;
  r.eps = kNaN;
  r.claimed = g3;

  SupTracker t;
  walk_grid(-g1, g1, spacing, {}, [&](double y) {
    if (std::fabs(y) < spacing / 2.0) return;  // exclude 0
    const double dev = std::fabs(g2 * nl.inverse(y) - y);
    t.feed(y, dev / (y * y));
    if (!r.has_violation && dev > g3 * y * y + 1e-10) {
      r.has_violation = true;
      r.violation_x = y;
      r.violation_value = dev;
    }
  });

  r.observed = t.sup;
  r.argmax = t.argmax;
  r.pass = !r.has_violation;
  return r;
}

}  // namespace nlse
