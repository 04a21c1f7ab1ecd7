#pragma once
// k-dimensional subspaces of R^n and seeded sampling of the transformed set
// S = { f(Qz) : z in R^k }.

#include <cstdint>
#include <vector>

#include "catalog.hpp"

namespace nlse {

struct Subspace {
  int n = 0, k = 0;
  std::vector<double> Q;  // row-major n x k; columns orthonormal
  std::uint64_t seed = 0;
};

// Orthonormalizes an iid Gaussian n x k draw (modified Gram-Schmidt with
// reorthogonalization).  Deterministic per (n, k, seed).  Pre: 1 <= k <= n.
Subspace random_subspace(int n, int k, std::uint64_t seed);

// Max-abs entry of Q^T Q - I_k.
double orthonormality_defect(const Subspace& Z);

// x = Q z.
std::vector<double> apply_basis(const Subspace& Z, const std::vector<double>& z);

enum class RadiusKind {
  log_uniform,  // radius = r_min * (r_max/r_min)^u, u uniform
  fixed,        // radius = r_fixed
  gaussian,     // z is a standard normal vector (radius chi-distributed)
};

struct SamplePlan {
  int count = 1;
  RadiusKind radius = RadiusKind::log_uniform;
  double r_min = 0.0, r_max = 0.0;  // log_uniform bounds, r_min > 0
  double r_fixed = 1.0;             // fixed radius, >= 0
  std::uint64_t seed = 0;
};

// Default mixed-radius plan: log_uniform(1e-4*sqrt(n), 1e2*sqrt(n)).  The
// small end probes below the eps/sqrt(n) norm-split threshold, the large end
// probes the asymptote regime.
SamplePlan default_plan(int count, int n, std::uint64_t seed);

// Throws Errc::precondition on an invalid plan (count < 1, bad radii).
void validate_plan(const SamplePlan& plan);

// z for sample `index`: radius * uniform direction per the plan.  Depends
// only on (plan.seed, index), so streams are identical under any evaluation
// order or thread count.
std::vector<double> sample_z(const SamplePlan& plan, int k, std::uint64_t index);

struct ImagePoint {
  std::vector<double> z;  // k
  std::vector<double> x;  // n, = Qz
  std::vector<double> y;  // n, = f(x) entrywise
};

ImagePoint image_point(const Nonlinearity& nl, const Subspace& Z, std::vector<double> z);

// All plan samples, in index order.
std::vector<ImagePoint> sample_images(const Nonlinearity& nl, const Subspace& Z,
                                      const SamplePlan& plan);

}  // namespace nlse
