#pragma once
// Empirical embedding-quality measurement over the transformed set
// S = { f(Qz) } : relative-ratio extremes, the smallest additive floor that
// closes a (1 +- eps1) band, and worst ratios split at the norm threshold
// eps/sqrt(n) that separates the large-norm and near-origin proof regimes.

#include <cstdint>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "sketch.hpp"
#include "subspace.hpp"

namespace nlse {

struct DistortionReport {
  std::string fixture;
  int samples = 0;            // points measured (plan samples + probes)
  int zero_norm_samples = 0;  // ||y|| = 0 points: excluded from ratio stats
  int m = 0, n = 0, k = 0;
  std::uint64_t seed_sketch = 0, seed_subspace = 0, seed_plan = 0;

  double eps1 = 0.0;            // band half-width used for additive_fit
  double eps_requested = 0.0;   // relative mode: eps as requested
  bool eps_substituted = false; // relative mode: eps_eff = min(g1, eps) < eps

  // Ratio folds start at 0, so both fields are >= 0: a sketch that only
  // shrinks (or only inflates) reports 0 on the other side.
  double max_rel_over = 0.0;   // max over samples of ||Pi y||/||y|| - 1
  double min_rel_under = 0.0;  // max over samples of 1 - ||Pi y||/||y||

  // Smallest eps2 >= 0 with (1-eps1)||y|| - eps2 <= ||Pi y|| <= (1+eps1)||y|| + eps2
  // over every sample (zero-norm samples satisfy the band trivially).
  double additive_fit = 0.0;

  double split_threshold = 0.0;  // eps/sqrt(n)
  double worst_SL = 0.0;         // worst |ratio - 1| over ||y|| >  threshold
  double worst_SU = 0.0;         // worst |ratio - 1| over ||y|| <= threshold
  int count_SL = 0, count_SU = 0;

  bool pass = false;  // set by measure_relative; sweep drivers set it for measure
};

// Extra deterministic sample points appended to the plan stream.
using ProbeList = std::vector<std::vector<double>>;

// Additive-regime measurement: folds ratios, additive_fit(eps1), and the
// norm split at eps2/sqrt(n) (the additive target sets the scale separating
// the large-norm and small-norm proof regimes) over plan samples plus probes.
DistortionReport measure(const SketchMatrix& pi, const Nonlinearity& nl, const Subspace& Z,
                         const SamplePlan& plan, double eps1, double eps2,
                         const ProbeList& extra_z = {});

// Relative-regime measurement (eps2 forced to 0).  Requires the fixture to
// claim the near-origin inverse condition; when eps >= g1 the effective
// target becomes min(g1, eps) and the substitution is flagged.  pass is
// worst |ratio - 1| <= effective eps over all nonzero samples.
DistortionReport measure_relative(const SketchMatrix& pi, const Nonlinearity& nl,
                                  const Subspace& Z, const SamplePlan& plan, double eps,
                                  const ProbeList& extra_z = {});

// Probe points z with (Qz)_i exactly at an f''-discontinuity of the fixture,
// cycling through rows of Q: per_disc points per discontinuity.
ProbeList disc_probes(const Nonlinearity& nl, const Subspace& Z, int per_disc);

// Probe points whose image norm ||f(Qz)|| brackets `threshold`: bisects the
// radius along `count` seeded directions and returns points at the crossing
// radius and at 0.5x / 2x.  Directions whose image norm never crosses the
// threshold are skipped.
ProbeList threshold_probes(const Nonlinearity& nl, const Subspace& Z, double threshold,
                           int count, std::uint64_t seed);

}  // namespace nlse
