#include "subspace.hpp"

#include <cmath>
#include <cstddef>

#include "error.hpp"
#include "linalg.hpp"
#include "rng.hpp"

namespace nlse {

namespace {

// One modified Gram-Schmidt sweep over the columns of Q (row-major n x k).
// Returns false if a column collapses to (near) zero norm.
bool mgs_pass(std::vector<double>& Q, int n, int k) {
  const std::size_t un = static_cast<std::size_t>(n);
  const std::size_t uk = static_cast<std::size_t>(k);
  for (std::size_t j = 0; j < uk; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      double proj = 0.0;
      for (std::size_t r = 0; r < un; ++r) proj += Q[r * uk + i] * Q[r * uk + j];
      for (std::size_t r = 0; r < un; ++r) Q[r * uk + j] -= proj * Q[r * uk + i];
    }
    double norm2 = 0.0;
    for (std::size_t r = 0; r < un; ++r) norm2 += Q[r * uk + j] * Q[r * uk + j];
    const double norm = std::sqrt(norm2);
    if (!(norm > 1e-300)) return false;
    for (std::size_t r = 0; r < un; ++r) Q[r * uk + j] /= norm;
  }
  return true;
}

}  // namespace

Subspace random_subspace(int n, int k, std::uint64_t seed) {
  require(k >= 1, Errc::invalid_argument, "random_subspace: k must be positive");
  require(k <= n, Errc::invalid_argument, "random_subspace: k must not exceed n");

  Subspace Z;
  Z.n = n;
  Z.k = k;
  Z.seed = seed;
  Z.Q.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
  rng::fill_gaussian(Z.Q, rng::derive(seed, 0x5b5b5b5bu), 0);

  // Two MGS sweeps leave the defect at roundoff for Gaussian draws; a third
  // covers the (measure-zero) bad cases the invariant check catches.
  bool ok = mgs_pass(Z.Q, n, k) && mgs_pass(Z.Q, n, k);
  if (!ok || orthonormality_defect(Z) > 1e-10) ok = mgs_pass(Z.Q, n, k);
  require(ok && orthonormality_defect(Z) <= 1e-10, Errc::internal,
          "random_subspace: orthonormalization failed");
  return Z;
}

double orthonormality_defect(const Subspace& Z) {
  const std::size_t n = static_cast<std::size_t>(Z.n);
  const std::size_t k = static_cast<std::size_t>(Z.k);
  double worst = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      double dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += Z.Q[r * k + i] * Z.Q[r * k + j];
      const double defect = std::fabs(dot - (i == j ? 1.0 : 0.0));
      if (defect > worst) worst = defect;
    }
  }
  return worst;
}

std::vector<double> apply_basis(const Subspace& Z, const std::vector<double>& z) {
  require(static_cast<int>(z.size()) == Z.k, Errc::dimension_mismatch,
          "apply_basis: z length must equal k");
  std::vector<double> x(static_cast<std::size_t>(Z.n));
  la::gemv(Z.Q, Z.n, Z.k, z, x);
  return x;
}

SamplePlan default_plan(int count, int n, std::uint64_t seed) {
  SamplePlan plan;
  plan.count = count;
  plan.radius = RadiusKind::log_uniform;
  plan.r_min = 1e-4 * std::sqrt(static_cast<double>(n));
  plan.r_max = 1e2 * std::sqrt(static_cast<double>(n));
  plan.seed = seed;
  return plan;
}

void validate_plan(const SamplePlan& plan) {
  require(plan.count >= 1, Errc::precondition, "sample plan: count must be >= 1");
  if (plan.radius == RadiusKind::log_uniform) {
    require(plan.r_min > 0.0 && plan.r_max >= plan.r_min, Errc::precondition,
            "sample plan: log_uniform needs 0 < r_min <= r_max");
  } else if (plan.radius == RadiusKind::fixed) {
    require(plan.r_fixed >= 0.0 && std::isfinite(plan.r_fixed), Errc::precondition,
            "sample plan: fixed radius must be a finite nonnegative real");
  }
}

std::vector<double> sample_z(const SamplePlan& plan, int k, std::uint64_t index) {
  require(k >= 1, Errc::invalid_argument, "sample_z: k must be positive");
  const std::uint64_t s = rng::derive(plan.seed, index);
  const std::size_t uk = static_cast<std::size_t>(k);
  std::vector<double> z(uk);
  rng::fill_gaussian(z, s, 0);  // consumes words 0 .. 2k-1
  if (plan.radius == RadiusKind::gaussian) return z;

  double norm = la::nrm2(z);
  if (norm == 0.0) {  // unreachable with Box-Muller, kept as a guard
    z.assign(uk, 0.0);
    z[0] = 1.0;
    norm = 1.0;
  }
  double radius = plan.r_fixed;
  if (plan.radius == RadiusKind::log_uniform) {
    const double u = rng::uniform01(s, 2 * static_cast<std::uint64_t>(uk));
    radius = plan.r_min * std::exp(u * std::log(plan.r_max / plan.r_min));
  }
  const double scale = radius / norm;
  for (double& v : z) v *= scale;
  return z;
}

ImagePoint image_point(const Nonlinearity& nl, const Subspace& Z, std::vector<double> z) {
  for (double v : z)
    require(std::isfinite(v), Errc::precondition, "image_point: z must be finite");
  ImagePoint p;
  p.x = apply_basis(Z, z);
  p.z = std::move(z);
  p.y.resize(p.x.size());
  for (std::size_t i = 0; i < p.x.size(); ++i) p.y[i] = nl.value(p.x[i]);
  return p;
}

std::vector<ImagePoint> sample_images(const Nonlinearity& nl, const Subspace& Z,
                                      const SamplePlan& plan) {
  validate_plan(plan);
  std::vector<ImagePoint> out;
  out.reserve(static_cast<std::size_t>(plan.count));
  for (int i = 0; i < plan.count; ++i)
    out.push_back(image_point(nl, Z, sample_z(plan, Z.k, static_cast<std::uint64_t>(i))));
  return out;
}

}  // namespace nlse
