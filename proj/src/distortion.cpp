#include "distortion.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "error.hpp"
#include "linalg.hpp"
#include "rng.hpp"

namespace nlse {

namespace {

struct Fold {
  double max_over = 0.0;
  double max_under = 0.0;
  double fit = 0.0;
  double worst_SL = 0.0, worst_SU = 0.0;
  int count_SL = 0, count_SU = 0;
  int zero_norm = 0;
  int samples = 0;
};

void fold_point(Fold& f, const SketchMatrix& pi, const Nonlinearity& nl, const Subspace& Z,
                const std::vector<double>& z, double eps1, double threshold,
                std::vector<double>& x, std::vector<double>& y, std::vector<double>& py) {
  la::gemv(Z.Q, Z.n, Z.k, z, x);
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = nl.value(x[i]);
  const double ny = la::nrm2(y);
  la::gemv(pi.entries, pi.m, pi.n, y, py);
  const double npy = la::nrm2(py);
  ++f.samples;

  // Band requirement this point imposes on eps2 (0 when inside the band).
  const double need = std::max({npy - (1.0 + eps1) * ny, (1.0 - eps1) * ny - npy, 0.0});
  f.fit = std::max(f.fit, need);

  if (ny == 0.0) {
    ++f.zero_norm;
    ++f.count_SU;  // ||y|| = 0 <= threshold; excluded from ratio folds
    return;
  }
  const double ratio = npy / ny;
  f.max_over = std::max(f.max_over, ratio - 1.0);
  f.max_under = std::max(f.max_under, 1.0 - ratio);
  const double dev = std::fabs(ratio - 1.0);
  if (ny > threshold) {
    f.worst_SL = std::max(f.worst_SL, dev);
    ++f.count_SL;
  } else {
    f.worst_SU = std::max(f.worst_SU, dev);
    ++f.count_SU;
  }
}

DistortionReport run_measure(const SketchMatrix& pi, const Nonlinearity& nl, const Subspace& Z,
                             const SamplePlan& plan, double eps1, double split_eps,
                             const ProbeList& extra_z) {
  require(pi.n == Z.n, Errc::dimension_mismatch,
          "measure: sketch width must equal the ambient dimension");
  validate_plan(plan);

  const double threshold = split_eps / std::sqrt(static_cast<double>(Z.n));
  Fold f;
  std::vector<double> x(static_cast<std::size_t>(Z.n)), y(static_cast<std::size_t>(Z.n));
  std::vector<double> py(static_cast<std::size_t>(pi.m));
  for (int i = 0; i < plan.count; ++i) {
    const std::vector<double> z = sample_z(plan, Z.k, static_cast<std::uint64_t>(i));
    fold_point(f, pi, nl, Z, z, eps1, threshold, x, y, py);
  }
  for (const std::vector<double>& z : extra_z) {
    require(static_cast<int>(z.size()) == Z.k, Errc::dimension_mismatch,
            "measure: probe length must equal k");
    fold_point(f, pi, nl, Z, z, eps1, threshold, x, y, py);
  }

  DistortionReport rep;
  rep.fixture = nl.name;
  rep.samples = f.samples;
  rep.zero_norm_samples = f.zero_norm;
  rep.m = pi.m;
  rep.n = pi.n;
  rep.k = Z.k;
  rep.seed_sketch = pi.seed;
  rep.seed_subspace = Z.seed;
  rep.seed_plan = plan.seed;
  rep.eps1 = eps1;
  rep.max_rel_over = f.max_over;
  rep.min_rel_under = f.max_under;
  rep.additive_fit = f.fit;
  rep.split_threshold = threshold;
  rep.worst_SL = f.worst_SL;
  rep.worst_SU = f.worst_SU;
  rep.count_SL = f.count_SL;
  rep.count_SU = f.count_SU;
  return rep;
}

}  // namespace

DistortionReport measure(const SketchMatrix& pi, const Nonlinearity& nl, const Subspace& Z,
                         const SamplePlan& plan, double eps1, double eps2,
                         const ProbeList& extra_z) {
  require(eps1 > 0.0 && eps1 <= 1.0, Errc::invalid_argument, "measure: eps1 must lie in (0, 1]");
  require(eps2 > 0.0 && eps2 <= 1.0, Errc::invalid_argument, "measure: eps2 must lie in (0, 1]");
  DistortionReport rep = run_measure(pi, nl, Z, plan, eps1, eps2, extra_z);
  rep.eps_requested = eps1;
  return rep;
}

DistortionReport measure_relative(const SketchMatrix& pi, const Nonlinearity& nl,
                                  const Subspace& Z, const SamplePlan& plan, double eps,
                                  const ProbeList& extra_z) {
  require(eps > 0.0 && eps <= 1.0, Errc::invalid_argument,
          "measure_relative: eps must lie in (0, 1]");
  require(nl.claims_condition3(), Errc::precondition,
          "measure_relative: fixture does not satisfy the near-origin inverse condition");

  const double g1 = (*nl.cc.g)[0];
  const double eps_eff = std::min(eps, g1);
  DistortionReport rep = run_measure(pi, nl, Z, plan, eps_eff, eps_eff, extra_z);
  rep.eps1 = eps_eff;
  rep.eps_requested = eps;
  rep.eps_substituted = eps_eff < eps;
  rep.pass = std::max(rep.max_rel_over, rep.min_rel_under) <= eps_eff;
  return rep;
}

ProbeList disc_probes(const Nonlinearity& nl, const Subspace& Z, int per_disc) {
  require(per_disc >= 0, Errc::invalid_argument, "disc_probes: per_disc must be >= 0");
  ProbeList probes;
  const std::size_t k = static_cast<std::size_t>(Z.k);
  for (double d : nl.second_derivative_discontinuities) {
    int made = 0;
    for (int row = 0; row < Z.n && made < per_disc; ++row) {
      const double* qr = Z.Q.data() + static_cast<std::size_t>(row) * k;
      double norm2 = 0.0;
      for (std::size_t j = 0; j < k; ++j) norm2 += qr[j] * qr[j];
      if (norm2 < 1e-20) continue;  // row (near) orthogonal to the subspace
      std::vector<double> z(k);
      const double scale = d / norm2;
      for (std::size_t j = 0; j < k; ++j) z[j] = scale * qr[j];
      probes.push_back(std::move(z));
      ++made;
    }
  }
  return probes;
}

ProbeList threshold_probes(const Nonlinearity& nl, const Subspace& Z, double threshold,
                           int count, std::uint64_t seed) {
  require(threshold > 0.0, Errc::invalid_argument, "threshold_probes: threshold must be > 0");
  require(count >= 0, Errc::invalid_argument, "threshold_probes: count must be >= 0");

  const std::size_t k = static_cast<std::size_t>(Z.k);
  std::vector<double> x(static_cast<std::size_t>(Z.n)), y(static_cast<std::size_t>(Z.n));
  const auto image_norm = [&](const std::vector<double>& z) {
    la::gemv(Z.Q, Z.n, Z.k, z, x);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = nl.value(x[i]);
    return la::nrm2(y);
  };

  ProbeList probes;
  for (int j = 0; j < count; ++j) {
    std::vector<double> dir(k);
    rng::fill_gaussian(dir, rng::derive(seed, 0x7000u + static_cast<std::uint64_t>(j)), 0);
    const double dn = la::nrm2(dir);
    if (dn == 0.0) continue;
    for (double& v : dir) v /= dn;

    const auto at_radius = [&](double r) {
      std::vector<double> z(k);
      for (std::size_t i = 0; i < k; ++i) z[i] = r * dir[i];
      return z;
    };

    // Bracket the crossing ||f(Q(r dir))|| = threshold with r in (0, hi].
    double lo = 0.0;
    double hi = std::max(threshold, 1e-6);
    const double f_lo = image_norm(at_radius(0.0));
    if (f_lo > threshold) continue;  // image norm starts above: no crossing from below
    bool bracketed = false;
    for (int step = 0; step < 80; ++step) {
      if (image_norm(at_radius(hi)) > threshold) {
        bracketed = true;
        break;
      }
      lo = hi;
      hi *= 2.0;
    }
    if (!bracketed) continue;  // image norm saturates below the threshold

    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (image_norm(at_radius(mid)) > threshold)
        hi = mid;
      else
        lo = mid;
    }
    const double r_star = 0.5 * (lo + hi);
    probes.push_back(at_radius(r_star));
    probes.push_back(at_radius(0.5 * r_star));
    probes.push_back(at_radius(2.0 * r_star));
  }
  return probes;
}

}  // namespace nlse
