#include "csrecover.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "error.hpp"
#include "linalg.hpp"
#include "rng.hpp"

namespace nlse {

namespace {

double activation_value(const Layer& layer, double a) {
  return layer.surrogate ? eval_pwl(*layer.surrogate, a) : layer.activation->value(a);
}

double activation_slope(const Layer& layer, double a) {
  if (layer.surrogate) return layer.surrogate->pieces[piece_index(*layer.surrogate, a)].slope;
  return layer.activation->derivative(a);
}

// Forward pass recording pre-activations a_l and outputs u_l per layer.
struct ForwardState {
  std::vector<std::vector<double>> pre;  // a_l = W_l u_{l-1}
  std::vector<std::vector<double>> out;  // u_l = f_l(a_l)
};

void forward(const Generator& G, const std::vector<double>& z, ForwardState& st) {
  st.pre.resize(G.layers.size());
  st.out.resize(G.layers.size());
  const std::vector<double>* in = &z;
  for (std::size_t l = 0; l < G.layers.size(); ++l) {
    const Layer& layer = G.layers[l];
    st.pre[l].resize(static_cast<std::size_t>(layer.n_out));
    st.out[l].resize(static_cast<std::size_t>(layer.n_out));
    la::gemv(layer.W, layer.n_out, layer.n_in, *in, st.pre[l]);
    for (std::size_t i = 0; i < st.pre[l].size(); ++i)
      st.out[l][i] = activation_value(layer, st.pre[l][i]);
    in = &st.out[l];
  }
}

}  // namespace

Generator random_generator(const std::vector<int>& dims,
                           const std::vector<std::string>& activations, std::uint64_t seed) {
  require(dims.size() >= 2, Errc::invalid_argument,
          "random_generator: dims must list input and at least one layer width");
  require(activations.size() == dims.size() - 1, Errc::invalid_argument,
          "random_generator: need one activation per layer");
  for (int d : dims)
    require(d >= 1, Errc::invalid_argument, "random_generator: dimensions must be positive");

  Generator G;
  G.seed = seed;
  G.layers.resize(dims.size() - 1);
  for (std::size_t l = 0; l < G.layers.size(); ++l) {
    Layer& layer = G.layers[l];
    layer.n_in = dims[l];
    layer.n_out = dims[l + 1];
    layer.activation = find_nonlinearity(activations[l]);
    require(layer.activation != nullptr, Errc::not_found,
            "random_generator: unknown activation '" + activations[l] + "'");
    const std::size_t count =
        static_cast<std::size_t>(layer.n_out) * static_cast<std::size_t>(layer.n_in);
    layer.W.resize(count);
    const std::uint64_t lseed = rng::derive(seed, static_cast<std::uint64_t>(l));
    const double scale = 1.0 / std::sqrt(static_cast<double>(layer.n_in));
    for (std::size_t idx = 0; idx < count; ++idx)
      layer.W[idx] = scale * rng::gaussian(lseed, static_cast<std::uint64_t>(idx));
  }
  return G;
}

std::vector<double> generate(const Generator& G, const std::vector<double>& z) {
  require(!G.layers.empty(), Errc::precondition, "generate: generator has no layers");
  require(static_cast<int>(z.size()) == G.input_dim(), Errc::dimension_mismatch,
          "generate: z length must equal the generator input dimension");
  ForwardState st;
  forward(G, z, st);
  return std::move(st.out.back());
}

SRECReport check_srec(const SketchMatrix& A, const Generator& G, const SamplePlan& plan_pairs,
                      double eps1, double eps2) {
  require(A.n == G.output_dim(), Errc::dimension_mismatch,
          "check_srec: sketch width must equal the generator output dimension");
  require(eps1 > 0.0 && eps1 <= 1.0, Errc::invalid_argument,
          "check_srec: eps1 must lie in (0, 1]");
  require(eps2 >= 0.0, Errc::invalid_argument, "check_srec: eps2 must be >= 0");
  validate_plan(plan_pairs);

  const int k = G.input_dim();
  SRECReport rep;
  rep.pairs = plan_pairs.count;
  rep.eps1 = eps1;
  rep.eps2 = eps2;
  rep.seed = plan_pairs.seed;

  std::vector<double> diff(static_cast<std::size_t>(G.output_dim()));
  std::vector<double> Ad(static_cast<std::size_t>(A.m));
  for (int i = 0; i < plan_pairs.count; ++i) {
    const std::vector<double> x1 =
        generate(G, sample_z(plan_pairs, k, 2 * static_cast<std::uint64_t>(i)));
    const std::vector<double> x2 =
        generate(G, sample_z(plan_pairs, k, 2 * static_cast<std::uint64_t>(i) + 1));
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = x1[j] - x2[j];
    la::gemv(A.entries, A.m, A.n, diff, Ad);
    const double slack = la::nrm2(Ad) - (1.0 - eps1) * la::nrm2(diff) + eps2;
    rep.worst_slack = std::min(rep.worst_slack, slack);
  }
  rep.pass = rep.worst_slack >= 0.0;
  return rep;
}

RecoveryResult recover(const Generator& G, const SketchMatrix& A, const std::vector<double>& y,
                       const RecoverOptions& opts) {
  require(!G.layers.empty(), Errc::precondition, "recover: generator has no layers");
  require(A.n == G.output_dim(), Errc::dimension_mismatch,
          "recover: sketch width must equal the generator output dimension");
  require(static_cast<int>(y.size()) == A.m, Errc::dimension_mismatch,
          "recover: y length must equal the sketch height");
  require(opts.restarts >= 0 && opts.iters >= 1, Errc::invalid_argument,
          "recover: restarts must be >= 0 and iters >= 1");
  require(opts.step > 0.0, Errc::invalid_argument, "recover: step must be > 0");

  const std::size_t k = static_cast<std::size_t>(G.input_dim());
  const std::size_t m = static_cast<std::size_t>(A.m);
  const std::size_t n = static_cast<std::size_t>(A.n);

  std::vector<double> res(m);      // A G(z) - y
  std::vector<double> grad_u(n);   // gradient wrt the current layer output
  std::vector<double> grad_in;     // gradient wrt the layer input
  ForwardState st;

  // h(z) = ||y - A G(z)||^2 via a recorded forward pass.
  const auto objective = [&](const std::vector<double>& z, ForwardState& state) {
    forward(G, z, state);
    la::gemv(A.entries, A.m, A.n, state.out.back(), res);
    double h = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      res[i] -= y[i];
      h += res[i] * res[i];
    }
    return h;
  };

  // grad h = 2 * J^T A^T (A G(z) - y), backpropagated through the layers.
  const auto gradient = [&](std::vector<double>& g) {
    grad_u.resize(n);
    la::gemv_t(A.entries, A.m, A.n, res, grad_u);
    for (std::size_t li = G.layers.size(); li-- > 0;) {
      const Layer& layer = G.layers[li];
      for (std::size_t i = 0; i < grad_u.size(); ++i)
        grad_u[i] *= activation_slope(layer, st.pre[li][i]);
      grad_in.resize(static_cast<std::size_t>(layer.n_in));
      la::gemv_t(layer.W, layer.n_out, layer.n_in, grad_u, grad_in);
      grad_u = grad_in;
    }
    g.resize(k);
    for (std::size_t i = 0; i < k; ++i) g[i] = 2.0 * grad_u[i];
  };

  RecoveryResult result;
  result.seed = opts.seed;
  if (opts.record_trace) result.traces.resize(static_cast<std::size_t>(opts.restarts) + 1);

  double best_h = std::numeric_limits<double>::infinity();
  std::vector<double> best_z;
  std::vector<double> z(k), z_trial(k), g;
  ForwardState st_trial;

  for (int restart = 0; restart <= opts.restarts; ++restart) {
    if (restart == 0)
      std::fill(z.begin(), z.end(), 0.0);
    else
      rng::fill_gaussian(z, rng::derive(opts.seed, static_cast<std::uint64_t>(restart)), 0);
    ++result.restarts_used;

    double h = objective(z, st);
    if (!std::isfinite(h)) {
      ++result.aborted_restarts;
      continue;
    }
    std::vector<double>* trace =
        opts.record_trace ? &result.traces[static_cast<std::size_t>(restart)] : nullptr;
    if (trace) trace->push_back(std::sqrt(h));

    bool aborted = false;
    for (int it = 0; it < opts.iters; ++it) {
      gradient(g);
      double gn = 0.0;
      for (double v : g) gn += v * v;
      if (!std::isfinite(gn)) {
        aborted = true;
        break;
      }
      if (gn < 1e-24) break;  // stationary

      double s = opts.step;
      bool accepted = false;
      for (int half = 0; half < 40; ++half) {
        for (std::size_t i = 0; i < k; ++i) z_trial[i] = z[i] - s * g[i];
        const double h_trial = objective(z_trial, st_trial);
        if (std::isfinite(h_trial) && h_trial <= h - 1e-4 * s * gn) {
          z.swap(z_trial);
          std::swap(st, st_trial);
          h = h_trial;
          accepted = true;
          break;
        }
        s *= 0.5;
      }
      if (!accepted) break;  // no Armijo decrease left at this scale
      ++result.iterations;
      if (trace) trace->push_back(std::sqrt(h));
      // `res` already holds the accepted point's residual: the accepting
      // objective() call was the last one to write it.
    }
    if (aborted) {
      ++result.aborted_restarts;
      continue;
    }
    if (h < best_h) {
      best_h = h;
      best_z = z;
      result.best_restart = restart;
    }
  }

  if (result.best_restart < 0) {
    // Every restart aborted (non-finite objective everywhere): report z = 0.
    best_z.assign(k, 0.0);
    result.x_hat = generate(G, best_z);
    la::gemv(A.entries, A.m, A.n, result.x_hat, res);
    double h = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = res[i] - y[i];
      h += r * r;
    }
    best_h = h;
  } else {
    result.x_hat = generate(G, best_z);
  }
  result.z_hat = std::move(best_z);
  result.residual = std::sqrt(best_h);
  return result;
}

double estimate_tail_lipschitz(const Generator& G, const SamplePlan& plan) {
  require(G.depth() >= 2, Errc::precondition,
          "estimate_tail_lipschitz: generator must have depth >= 2");
  validate_plan(plan);

  const Layer& first = G.layers.front();
  Generator tail;
  tail.layers.assign(G.layers.begin() + 1, G.layers.end());
  tail.seed = G.seed;

  const int k = G.input_dim();
  std::vector<double> u(static_cast<std::size_t>(first.n_out));
  std::vector<double> v(static_cast<std::size_t>(first.n_out));
  const auto layer1_out = [&](const std::vector<double>& z, std::vector<double>& out) {
    la::gemv(first.W, first.n_out, first.n_in, z, out);
    for (double& a : out) a = activation_value(first, a);
  };

  double worst = 0.0;
  std::vector<double> du(u.size());
  for (int i = 0; i < plan.count; ++i) {
    layer1_out(sample_z(plan, k, 2 * static_cast<std::uint64_t>(i)), u);
    layer1_out(sample_z(plan, k, 2 * static_cast<std::uint64_t>(i) + 1), v);
    for (std::size_t j = 0; j < du.size(); ++j) du[j] = u[j] - v[j];
    const double denom = la::nrm2(du);
    if (denom == 0.0) continue;
    const std::vector<double> gu = generate(tail, u);
    const std::vector<double> gv = generate(tail, v);
    double num2 = 0.0;
    for (std::size_t j = 0; j < gu.size(); ++j) {
      const double d = gu[j] - gv[j];
      num2 += d * d;
    }
    worst = std::max(worst, std::sqrt(num2) / denom);
  }
  require(worst > 0.0, Errc::precondition,
          "estimate_tail_lipschitz: all sampled pairs collapsed; increase plan.count");
  return 2.0 * worst;
}

Generator deep_pwl_surrogate(const Generator& G, double eps2, double L_est) {
  require(G.depth() >= 2, Errc::precondition, "deep_pwl_surrogate: generator depth must be >= 2");
  require(eps2 > 0.0 && eps2 <= 1.0, Errc::invalid_argument,
          "deep_pwl_surrogate: eps2 must lie in (0, 1]");
  require(L_est > 0.0 && std::isfinite(L_est), Errc::invalid_argument,
          "deep_pwl_surrogate: L_est must be a positive real");
  require(!G.layers.front().surrogate, Errc::precondition,
          "deep_pwl_surrogate: layer 1 already carries a surrogate");
  for (std::size_t l = 1; l < G.layers.size(); ++l)
    require(G.layers[l].activation->bound.has_value(), Errc::precondition,
            "deep_pwl_surrogate: layers after the first must use bounded activations");

  const double n = static_cast<double>(G.output_dim());
  const double tol = std::min(eps2 / (n * L_est), 1.0);
  Generator out = G;
  out.layers.front().surrogate = build_pwl(*G.layers.front().activation, tol);
  return out;
}

}  // namespace nlse
