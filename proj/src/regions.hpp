#pragma once
// Linear-region census of a piecewise-linear map applied entrywise to a
// subspace: the coordinates of Qz fall into pieces of the PWL function, and
// the activation pattern (vector of piece indices) is constant on each cell
// of the hyperplane arrangement { (Qz)_i = breakpoint_j }.  The number of
// distinct patterns is bounded by sum_{i=0}^{k} C(n*(t-1), i).

#include <cstdint>
#include <string>
#include <vector>

#include "pwl.hpp"
#include "subspace.hpp"

namespace nlse {

enum class CensusMethod { exact_1d, sign_sample };

struct RegionCensus {
  int k = 0, n = 0, t = 0;  // t = number of pieces
  CensusMethod method = CensusMethod::sign_sample;
  long long distinct_patterns = 0;
  double bound = 0.0;  // sum_{i=0}^{k} C(n*(t-1), i)
  long long samples_used = 0;
  bool degenerate = false;   // coincident crossings / zero rows (exact_1d)
  long long perturbed = 0;   // samples nudged off a breakpoint hyperplane
};

// Arrangement bound sum_{i=0}^{k} C(n*(t-1), i), evaluated in long double
// (saturates to +inf well past any desk-scale parameter).
double region_bound(int k, int n, int t);

// Piece index of (Qz)_i per coordinate.  A coordinate landing exactly on a
// breakpoint is perturbed by +1e-12 (half-open pieces put it in the right
// piece either way; the nudge is recorded via *perturbed).
std::vector<int> region_map(const PWLFunction& pwl, const Subspace& Z,
                            const std::vector<double>& z, long long* perturbed = nullptr);

// exact_1d (k = 1 only): sorts all breakpoint crossings along the line and
// counts intervals exactly; flags degeneracy when two crossings coincide or a
// basis entry vanishes.  sign_sample: draws `budget` wide-radius points and
// counts distinct activation patterns (a lower bound on the region count).
// Pre: pwl has >= 2 pieces; budget >= 1000 for sign_sample.
RegionCensus census(const PWLFunction& pwl, const Subspace& Z, CensusMethod method,
                    long long budget, std::uint64_t seed);

std::string to_string(CensusMethod method);

}  // namespace nlse
