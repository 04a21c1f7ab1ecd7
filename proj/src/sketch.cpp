#include "sketch.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

#include "error.hpp"
#include "linalg.hpp"
#include "rng.hpp"

namespace nlse {

namespace {
constexpr std::size_t kMaxEntries = std::size_t{1} << 28;

bool in_unit(double x) { return x > 0.0 && x <= 1.0; }
}  // namespace

DimResult required_dim(const DimSpec& spec) {
  require(spec.k >= 1, Errc::invalid_argument, "required_dim: k must be a positive integer");
  require(spec.n >= 1, Errc::invalid_argument, "required_dim: n must be a positive integer");
  require(in_unit(spec.delta), Errc::invalid_argument, "required_dim: delta must lie in (0, 1]");
  require(spec.C > 0.0 && std::isfinite(spec.C), Errc::invalid_argument,
          "required_dim: C must be a positive real");

  double arg = 0.0;
  double e = 0.0;
  switch (spec.mode) {
    case DimMode::additive:
    case DimMode::srec:
      require(in_unit(spec.eps1), Errc::invalid_argument, "required_dim: eps1 must lie in (0, 1]");
      require(in_unit(spec.eps2), Errc::invalid_argument, "required_dim: eps2 must lie in (0, 1]");
      arg = static_cast<double>(spec.n) / spec.eps2;
      e = spec.eps1;
      break;
    case DimMode::piecewise:
      require(spec.t >= 1, Errc::invalid_argument, "required_dim: t must be a positive integer");
      require(in_unit(spec.eps), Errc::invalid_argument, "required_dim: eps must lie in (0, 1]");
      arg = static_cast<double>(spec.n) * static_cast<double>(spec.t);
      e = spec.eps;
      break;
    case DimMode::relative:
      require(in_unit(spec.eps), Errc::invalid_argument, "required_dim: eps must lie in (0, 1]");
      arg = static_cast<double>(spec.n) / spec.eps;
      e = spec.eps;
      break;
  }

  const double raw =
      std::ceil(spec.C * (static_cast<double>(spec.k) * std::log(arg) + std::log(1.0 / spec.delta)) /
                (e * e));
  require(std::isfinite(raw), Errc::invalid_argument, "required_dim: formula overflowed");

  DimResult res;
  res.m_raw = raw > 2e9 ? 2000000000 : static_cast<int>(raw);
  res.m = res.m_raw;
  if (res.m > spec.n) {
    res.m = spec.n;
    res.clamped = true;
  }
  if (res.m < 1) {
    res.m = 1;
    res.clamped = true;
  }
  return res;
}

SketchMatrix sample_sketch(int m, int n, std::uint64_t seed) {
  require(m >= 1 && n >= 1, Errc::invalid_argument, "sample_sketch: m and n must be positive");
  const std::size_t count = static_cast<std::size_t>(m) * static_cast<std::size_t>(n);
  require(count <= kMaxEntries, Errc::resource,
          "sample_sketch: refusing to allocate more than 2^28 entries");

  SketchMatrix S;
  S.m = m;
  S.n = n;
  S.seed = seed;
  S.entries.resize(count);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (std::size_t idx = 0; idx < count; ++idx)
    S.entries[idx] = scale * rng::gaussian(seed, static_cast<std::uint64_t>(idx));
  return S;
}

void apply(const SketchMatrix& S, const double* x, double* y) {
  la::gemv(S.entries, S.m, S.n, std::span<const double>(x, static_cast<std::size_t>(S.n)),
           std::span<double>(y, static_cast<std::size_t>(S.m)));
}

std::vector<double> apply(const SketchMatrix& S, const std::vector<double>& x) {
  require(static_cast<int>(x.size()) == S.n, Errc::dimension_mismatch,
          "apply: input length must equal the sketch width");
  std::vector<double> y(static_cast<std::size_t>(S.m));
  apply(S, x.data(), y.data());
  return y;
}

double spectral_norm(const SketchMatrix& S, int iters) {
  require(iters >= 50, Errc::precondition, "spectral_norm: needs at least 50 power iterations");
  require(S.m >= 1 && S.n >= 1 && S.entries.size() ==
              static_cast<std::size_t>(S.m) * static_cast<std::size_t>(S.n),
          Errc::invalid_argument, "spectral_norm: malformed sketch");

  const std::size_t n = static_cast<std::size_t>(S.n);
  std::vector<double> v(n), Sv(static_cast<std::size_t>(S.m)), w(n);
  const std::uint64_t vseed = rng::derive(S.seed, 0x5bec7a11u);
  rng::fill_gaussian(v, vseed, 0);
  double nv = la::nrm2(v);
  if (nv == 0.0) {
    v[0] = 1.0;
    nv = 1.0;
  }
  la::scal(1.0 / nv, v);

  double sigma2 = 0.0;
  for (int it = 0; it < iters; ++it) {
    la::gemv(S.entries, S.m, S.n, v, Sv);
    la::gemv_t(S.entries, S.m, S.n, Sv, w);
    sigma2 = la::dot(v, w);  // Rayleigh quotient for S^T S
    const double nw = la::nrm2(w);
    if (nw == 0.0) return 0.0;  // v in the null space: norm estimate is 0
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
  }
  return std::sqrt(std::max(sigma2, 0.0));
}

}  // namespace nlse
