#include "regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "error.hpp"
#include "linalg.hpp"
#include "rng.hpp"

namespace nlse {

namespace {
constexpr double kNudge = 1e-12;

// Wide log-radius mixture covering fine near-origin cells and the outer rays.
std::vector<double> census_point(int k, std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t s = rng::derive(seed, index);
  std::vector<double> z(static_cast<std::size_t>(k));
  rng::fill_gaussian(z, s, 0);
  double norm = la::nrm2(z);
  if (norm == 0.0) {
    z[0] = 1.0;
    norm = 1.0;
  }
  const double u = rng::uniform01(s, 2 * static_cast<std::uint64_t>(k));
  const double radius = 1e-3 * std::exp(u * std::log(1e6));  // log-uniform on [1e-3, 1e3]
  const double scale = radius * std::sqrt(static_cast<double>(k)) / norm;
  for (double& v : z) v *= scale;
  return z;
}
}  // namespace

std::string to_string(CensusMethod method) {
  return method == CensusMethod::exact_1d ? "exact_1d" : "sign_sample";
}

double region_bound(int k, int n, int t) {
  require(k >= 1 && n >= 1 && t >= 1, Errc::invalid_argument,
          "region_bound: k, n, t must be positive");
  const long long c = static_cast<long long>(n) * (t - 1);
  long double total = 0.0L;
  long double binom = 1.0L;  // C(c, 0)
  for (int i = 0; i <= k; ++i) {
    total += binom;
    binom = binom * static_cast<long double>(c - i) / static_cast<long double>(i + 1);
    if (i >= c) binom = 0.0L;  // C(c, i) = 0 beyond i = c
  }
  const double out = static_cast<double>(total);
  return out > std::numeric_limits<double>::max() ? std::numeric_limits<double>::infinity() : out;
}

std::vector<int> region_map(const PWLFunction& pwl, const Subspace& Z,
                            const std::vector<double>& z, long long* perturbed) {
  require(static_cast<int>(z.size()) == Z.k, Errc::dimension_mismatch,
          "region_map: z length must equal k");
  for (double v : z)
    require(std::isfinite(v), Errc::precondition, "region_map: z must be finite");

  std::vector<double> x(static_cast<std::size_t>(Z.n));
  la::gemv(Z.Q, Z.n, Z.k, z, x);

  std::vector<int> pattern(x.size());
  bool nudged = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double xi = x[i];
    if (std::binary_search(pwl.breakpoints.begin(), pwl.breakpoints.end(), xi)) {
      xi += kNudge;  // exactly on a hyperplane: nudge into the right piece
      nudged = true;
    }
    pattern[i] = static_cast<int>(piece_index(pwl, xi));
  }
  if (nudged && perturbed != nullptr) ++*perturbed;
  return pattern;
}

RegionCensus census(const PWLFunction& pwl, const Subspace& Z, CensusMethod method,
                    long long budget, std::uint64_t seed) {
  require(pwl.piece_count() >= 2, Errc::precondition,
          "census: a single affine piece induces no partition");

  RegionCensus out;
  out.k = Z.k;
  out.n = Z.n;
  out.t = static_cast<int>(pwl.piece_count());
  out.method = method;
  out.bound = region_bound(Z.k, Z.n, out.t);

  if (method == CensusMethod::exact_1d) {
    require(Z.k == 1, Errc::precondition, "census: exact_1d applies only to k = 1");
    // Coordinate i crosses breakpoint t_j where z * q_i = t_j.
    std::vector<double> crossings;
    crossings.reserve(static_cast<std::size_t>(Z.n) * pwl.breakpoints.size());
    for (int i = 0; i < Z.n; ++i) {
      const double qi = Z.Q[static_cast<std::size_t>(i)];
      if (qi == 0.0) {
        out.degenerate = true;  // coordinate never crosses: formula case broken
        continue;
      }
      for (double bp : pwl.breakpoints) crossings.push_back(bp / qi);
    }
    std::sort(crossings.begin(), crossings.end());
    long long distinct = 0;
    for (std::size_t i = 0; i < crossings.size(); ++i) {
      if (i > 0) {
        const double gap = crossings[i] - crossings[i - 1];
        const double scale = std::max({1.0, std::fabs(crossings[i]), std::fabs(crossings[i - 1])});
        if (gap <= 1e-12 * scale) {
          out.degenerate = true;  // coincident crossing hyperplanes
          continue;
        }
      }
      ++distinct;
    }
    out.distinct_patterns = distinct + 1;  // intervals between crossings
    out.samples_used = 0;
  } else {
    require(budget >= 1000, Errc::precondition, "census: sign_sample needs budget >= 1000");
    std::set<std::vector<int>> patterns;
    for (long long i = 0; i < budget; ++i) {
      const std::vector<double> z = census_point(Z.k, seed, static_cast<std::uint64_t>(i));
      patterns.insert(region_map(pwl, Z, z, &out.perturbed));
    }
    out.distinct_patterns = static_cast<long long>(patterns.size());
    out.samples_used = budget;
  }

  require(static_cast<double>(out.distinct_patterns) <= out.bound, Errc::internal,
          "census: distinct patterns exceeded the arrangement bound");
  return out;
}

}  // namespace nlse
