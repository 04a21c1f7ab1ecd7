#pragma once
// Compressed sensing with a generative prior: seeded synthetic generators
// G(z) = f_d(W_d ... f_1(W_1 z)), empirical set-restricted eigenvalue checks
// on pairs of generator outputs, recovery by gradient descent on
// ||y - A G(z)||^2 with restarts, and the depth-d surrogate that swaps
// layer 1's activation for a piecewise-linear approximation.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "pwl.hpp"
#include "sketch.hpp"
#include "subspace.hpp"

namespace nlse {

struct Layer {
  int n_in = 0, n_out = 0;
  std::vector<double> W;                     // row-major n_out x n_in
  const Nonlinearity* activation = nullptr;  // catalog fixture
  std::optional<PWLFunction> surrogate;      // evaluated instead when present
};

struct Generator {
  std::vector<Layer> layers;
  std::uint64_t seed = 0;

  int depth() const { return static_cast<int>(layers.size()); }
  int input_dim() const { return layers.empty() ? 0 : layers.front().n_in; }
  int output_dim() const { return layers.empty() ? 0 : layers.back().n_out; }
};

// dims = {n_0 = k, n_1, ..., n_d}; activations names one catalog fixture per
// layer.  Weights are iid N(0, 1/n_in) (standard fan-in scaling), drawn from
// a per-layer derived stream.
Generator random_generator(const std::vector<int>& dims,
                           const std::vector<std::string>& activations, std::uint64_t seed);

std::vector<double> generate(const Generator& G, const std::vector<double>& z);

struct SRECReport {
  long long pairs = 0;
  double eps1 = 0.0, eps2 = 0.0;
  // min over pairs of ||A(x1 - x2)|| - (1 - eps1)*||x1 - x2|| + eps2.
  double worst_slack = std::numeric_limits<double>::infinity();
  bool pass = false;  // worst_slack >= 0
  std::uint64_t seed = 0;
};

// Pair i uses plan samples 2i and 2i+1; plan.count is the number of pairs.
SRECReport check_srec(const SketchMatrix& A, const Generator& G, const SamplePlan& plan_pairs,
                      double eps1, double eps2);

struct RecoverOptions {
  int restarts = 20;      // Gaussian inits in addition to the z = 0 init
  int iters = 2000;       // max accepted steps per restart
  double step = 1.0;      // line-search starting step (reset every iteration)
  std::uint64_t seed = 0;
  bool record_trace = false;
};

struct RecoveryResult {
  std::vector<double> z_hat;
  std::vector<double> x_hat;  // G(z_hat)
  double residual = std::numeric_limits<double>::infinity();  // ||y - A x_hat||
  // Filled by callers that know the ground truth ||x_true - x_hat||.
  double reconstruction_error = std::numeric_limits<double>::quiet_NaN();
  int restarts_used = 0;      // restarts actually run (including z = 0)
  int aborted_restarts = 0;   // aborted on a non-finite objective/gradient
  int best_restart = -1;      // ties resolved to the lowest index
  long long iterations = 0;   // accepted descent steps across restarts
  std::uint64_t seed = 0;
  // Per-restart residual traces (||y - A G(z)|| after each accepted step),
  // only populated when opts.record_trace.
  std::vector<std::vector<double>> traces;
};

// Gradient descent with Armijo backtracking on ||y - A G(z)||^2; activations
// use right-derivatives at kinks.  Deterministic per opts.seed.
RecoveryResult recover(const Generator& G, const SketchMatrix& A, const std::vector<double>& y,
                       const RecoverOptions& opts);

// Empirical Lipschitz estimate of the tail G2 = layers 2..d: max over
// plan.count pairs (u, v) of ||G2(u) - G2(v)|| / ||u - v||, times a safety
// factor of 2.  u and v are layer-1 outputs of plan-sampled inputs.
double estimate_tail_lipschitz(const Generator& G, const SamplePlan& plan);

// Returns a copy of G whose layer-1 activation is replaced by its PWL
// approximation at tolerance eps2 / (n * L_est) (clamped to 1), so that
// ||G - G~|| <= eps2/sqrt(n) whenever L_est dominates the true tail
// Lipschitz constant.  Layers 2..d must use bounded activations.
Generator deep_pwl_surrogate(const Generator& G, double eps2, double L_est);

}  // namespace nlse
