#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

#include "csrecover.hpp"
#include "distortion.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "rng.hpp"
#include "sketch.hpp"
#include "subspace.hpp"

namespace nlse {

namespace {

// Runs fn(0..count-1) across `threads` workers; any exception is rethrown
// after all workers join.  Work items must not depend on execution order.
void parallel_for_impl(long long count, int threads, const std::function<void(long long)>& fn) {
  if (threads < 1) threads = 1;
  if (threads <= 1 || count <= 1) {
    for (long long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long long> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const int workers = static_cast<int>(std::min<long long>(threads, count));
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const long long i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string join_csv(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  line += '\n';
  return line;
}

// Sorted `key=value` echo of the config with execution-only keys dropped and
// base_seed pinned to the resolved value, so outputs are byte-identical
// across parallelism degrees and seed-override paths.
std::string config_echo(const Config& cfg, std::uint64_t base_seed) {
  std::string echo = "# config:";
  bool base_seen = false;
  for (const auto& [key, values] : cfg.entries()) {
    if (key == "parallel") continue;
    if (key == "base_seed") {
      echo += " base_seed=" + format_u64(base_seed);
      base_seen = true;
      continue;
    }
    for (const std::string& v : values) echo += " " + key + "=" + v;
  }
  if (!base_seen) echo += " base_seed=" + format_u64(base_seed);
  echo += '\n';
  return echo;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];  // upper median for even counts
}

// ==== distortion sweep ======================================================

struct DistortionCell {
  std::string fixture;
  int k = 0, n = 0, m = 0;
  bool m_clamped = false;
  int m_raw = 0;
  double eps1 = 0.0, eps2 = 0.0;  // relative mode: eps1 = requested eps, eps2 = 0
  double delta = 0.0, C = 0.0;
};

struct TrialRow {
  std::uint64_t seed = 0;
  DistortionReport rep;
  bool pass = false;
};

}  // namespace

SweepSummary run_distortion_sweep(const Config& cfg, std::uint64_t base_seed) {
  cfg.require_known({"fixture", "mode", "k", "n", "m", "eps1", "eps2", "eps", "delta", "C",
                     "trials", "samples", "probes", "pass_fraction", "base_seed", "parallel"});

  const std::string mode = cfg.get_or("mode", "additive");
  require(mode == "additive" || mode == "relative", Errc::invalid_argument,
          "distortion sweep: mode must be 'additive' or 'relative'");
  const bool relative = mode == "relative";

  const std::vector<std::string> fixtures = cfg.string_list_or("fixture", {});
  const std::vector<long long> ks = cfg.int_list_or("k", {4});
  const std::vector<long long> ns = cfg.int_list_or("n", {256});
  const std::vector<long long> ms = cfg.int_list_or("m", {});  // empty: use the dimension formula
  const std::vector<double> eps1s = cfg.real_list_or("eps1", {0.25});
  const std::vector<double> eps2s = cfg.real_list_or("eps2", {0.1});
  const std::vector<double> epss = cfg.real_list_or("eps", {0.3});
  const double delta = cfg.get_real_or("delta", 0.05);
  const double C = cfg.get_real_or("C", kDefaultDimConstant);
  const int trials = static_cast<int>(cfg.get_int_or("trials", 100));
  const int samples = static_cast<int>(cfg.get_int_or("samples", 1000));
  const bool probes = cfg.get_bool_or("probes", true);
  const double pass_fraction = cfg.get_real_or("pass_fraction", 0.95);
  const int parallel = static_cast<int>(cfg.get_int_or("parallel", 1));
  require(trials >= 1 && samples >= 1, Errc::invalid_argument,
          "distortion sweep: trials and samples must be >= 1");

  // Build the cell grid: fixtures x k x n x (eps pairs) x m choices.
  std::vector<DistortionCell> cells;
  for (const std::string& fixture : fixtures) {
    require(find_nonlinearity(fixture) != nullptr, Errc::not_found,
            "distortion sweep: unknown fixture '" + fixture + "'");
    for (long long k : ks)
      for (long long n : ns) {
        std::vector<std::pair<double, double>> eps_pairs;
        if (relative) {
          for (double e : epss) eps_pairs.emplace_back(e, 0.0);
        } else {
          for (double e1 : eps1s)
            for (double e2 : eps2s) eps_pairs.emplace_back(e1, e2);
        }
        for (const auto& [e1, e2] : eps_pairs) {
          DistortionCell cell;
          cell.fixture = fixture;
          cell.k = static_cast<int>(k);
          cell.n = static_cast<int>(n);
          cell.eps1 = e1;
          cell.eps2 = e2;
          cell.delta = delta;
          cell.C = C;
          if (ms.empty()) {
            DimSpec spec;
            spec.k = cell.k;
            spec.n = cell.n;
            spec.delta = delta;
            spec.C = C;
            if (relative) {
              spec.mode = DimMode::relative;
              spec.eps = e1;
            } else {
              spec.mode = DimMode::additive;
              spec.eps1 = e1;
              spec.eps2 = e2;
            }
            const DimResult dim = required_dim(spec);
            cell.m = dim.m;
            cell.m_raw = dim.m_raw;
            cell.m_clamped = dim.clamped;
            cells.push_back(cell);
          } else {
            for (long long m : ms) {
              cell.m = static_cast<int>(m);
              cell.m_raw = cell.m;
              cell.m_clamped = false;
              cells.push_back(cell);
            }
          }
        }
      }
  }

  SweepSummary summary;
  summary.csv += "# nlse distortion sweep, mode=" + mode + "\n";
  summary.csv += config_echo(cfg, base_seed);
  summary.csv +=
      "fixture,mode,k,n,m,eps1,eps2,delta,C,trial,seed,samples,max_rel_over,min_rel_under,"
      "additive_fit,split_threshold,worst_SL,worst_SU,pass\n";

  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const DistortionCell& cell = cells[ci];
    const Nonlinearity& nl = *find_nonlinearity(cell.fixture);
    const std::uint64_t cell_seed = rng::derive(base_seed, static_cast<std::uint64_t>(ci));

    std::vector<TrialRow> rows(static_cast<std::size_t>(trials));
    parallel_for_impl(trials, parallel, [&](long long t) {
      const std::uint64_t trial_seed = rng::derive(cell_seed, static_cast<std::uint64_t>(t));
      const SketchMatrix pi = sample_sketch(cell.m, cell.n, rng::derive(trial_seed, 1));
      const Subspace Z = random_subspace(cell.n, cell.k, rng::derive(trial_seed, 2));
      SamplePlan plan = default_plan(samples, cell.n, rng::derive(trial_seed, 3));

      ProbeList extra;
      if (probes) {
        const double split_eps = relative ? std::min(cell.eps1, nl.claims_condition3()
                                                                    ? (*nl.cc.g)[0]
                                                                    : cell.eps1)
                                          : cell.eps2;
        const double threshold = split_eps / std::sqrt(static_cast<double>(cell.n));
        extra = threshold_probes(nl, Z, threshold, 8, rng::derive(trial_seed, 4));
        const ProbeList discs = disc_probes(nl, Z, 2);
        extra.insert(extra.end(), discs.begin(), discs.end());
      }

      TrialRow& row = rows[static_cast<std::size_t>(t)];
      row.seed = trial_seed;
      if (relative) {
        row.rep = measure_relative(pi, nl, Z, plan, cell.eps1, extra);
        row.pass = row.rep.pass;
      } else {
        row.rep = measure(pi, nl, Z, plan, cell.eps1, cell.eps2, extra);
        row.pass = row.rep.additive_fit <= cell.eps2;
        row.rep.pass = row.pass;
      }
    });

    if (cell.m_clamped)
      summary.csv += "# cell " + cell.fixture + ": m clamped to n=" + format_u64(
                         static_cast<std::uint64_t>(cell.m)) +
                     " (formula gave " + format_u64(static_cast<std::uint64_t>(cell.m_raw)) +
                     ")\n";

    int passed = 0;
    DistortionReport agg;
    for (int t = 0; t < trials; ++t) {
      const TrialRow& row = rows[static_cast<std::size_t>(t)];
      summary.csv += join_csv({cell.fixture, mode, format_u64(cell.k), format_u64(cell.n),
                               format_u64(cell.m), format_double(cell.eps1),
                               format_double(cell.eps2), format_double(cell.delta),
                               format_double(cell.C), format_u64(static_cast<std::uint64_t>(t)),
                               format_u64(row.seed), format_u64(row.rep.samples),
                               format_double(row.rep.max_rel_over),
                               format_double(row.rep.min_rel_under),
                               format_double(row.rep.additive_fit),
                               format_double(row.rep.split_threshold),
                               format_double(row.rep.worst_SL), format_double(row.rep.worst_SU),
                               row.pass ? "1" : "0"});
      passed += row.pass ? 1 : 0;
      agg.max_rel_over = std::max(agg.max_rel_over, row.rep.max_rel_over);
      agg.min_rel_under = std::max(agg.min_rel_under, row.rep.min_rel_under);
      agg.additive_fit = std::max(agg.additive_fit, row.rep.additive_fit);
      agg.worst_SL = std::max(agg.worst_SL, row.rep.worst_SL);
      agg.worst_SU = std::max(agg.worst_SU, row.rep.worst_SU);
      agg.split_threshold = row.rep.split_threshold;
      agg.samples += row.rep.samples;
    }
    const double fraction = static_cast<double>(passed) / static_cast<double>(trials);
    summary.csv += join_csv(
        {cell.fixture, mode, format_u64(cell.k), format_u64(cell.n), format_u64(cell.m),
         format_double(cell.eps1), format_double(cell.eps2), format_double(cell.delta),
         format_double(cell.C), "agg", format_u64(cell_seed), format_u64(agg.samples),
         format_double(agg.max_rel_over), format_double(agg.min_rel_under),
         format_double(agg.additive_fit), format_double(agg.split_threshold),
         format_double(agg.worst_SL), format_double(agg.worst_SU), format_double(fraction)});

    summary.rows += trials;
    ++summary.cells;
    if (fraction < pass_fraction) ++summary.cells_failed;
  }
  return summary;
}

// ==== generative-model driver ==============================================

namespace {

struct CsgenRow {
  std::uint64_t seed = 0;
  double noise_norm = 0.0;
  double residual = std::numeric_limits<double>::quiet_NaN();
  double recon_error = std::numeric_limits<double>::quiet_NaN();
  double ratio = std::numeric_limits<double>::quiet_NaN();  // recon vs its tolerance base
  int restarts_used = 0;
  double srec_slack = std::numeric_limits<double>::quiet_NaN();
  bool srec_pass = true;
  bool pass = false;
};

}  // namespace

SweepSummary run_csgen(const Config& cfg, std::uint64_t base_seed) {
  cfg.require_known({"task", "fixture", "k", "n", "hidden", "depth", "m", "noise_rel", "trials",
                     "restarts", "iters", "step", "srec_pairs", "eps1", "eps2", "recon_rel_tol",
                     "recon_noise_factor", "pass_fraction", "base_seed", "parallel"});

  const std::string task = cfg.get_or("task", "recover");
  require(task == "recover" || task == "srec" || task == "both", Errc::invalid_argument,
          "csgen: task must be 'recover', 'srec', or 'both'");
  const bool do_recover = task != "srec";
  const bool do_srec = task != "recover";

  const std::string fixture = cfg.get_or("fixture", "tanh");
  require(find_nonlinearity(fixture) != nullptr, Errc::not_found,
          "csgen: unknown fixture '" + fixture + "'");
  const int k = static_cast<int>(cfg.get_int_or("k", 4));
  const int n = static_cast<int>(cfg.get_int_or("n", 128));
  const int hidden = static_cast<int>(cfg.get_int_or("hidden", n));
  const int depth = static_cast<int>(cfg.get_int_or("depth", 2));
  require(depth >= 1, Errc::invalid_argument, "csgen: depth must be >= 1");
  const int m = static_cast<int>(cfg.get_int("m"));
  const double noise_rel = cfg.get_real_or("noise_rel", 0.0);
  const int trials = static_cast<int>(cfg.get_int_or("trials", 20));
  const int restarts = static_cast<int>(cfg.get_int_or("restarts", 20));
  const int iters = static_cast<int>(cfg.get_int_or("iters", 2000));
  const double step = cfg.get_real_or("step", 1.0);
  const int srec_pairs = static_cast<int>(cfg.get_int_or("srec_pairs", do_srec ? 10000 : 0));
  const double eps1 = cfg.get_real_or("eps1", 0.5);
  const double eps2 = cfg.get_real_or("eps2", 0.1);
  const double recon_rel_tol = cfg.get_real_or("recon_rel_tol", 0.01);
  const double recon_noise_factor = cfg.get_real_or("recon_noise_factor", 5.0);
  const double pass_fraction = cfg.get_real_or("pass_fraction", 0.95);
  const int parallel = static_cast<int>(cfg.get_int_or("parallel", 1));
  require(trials >= 1, Errc::invalid_argument, "csgen: trials must be >= 1");

  std::vector<int> dims{k};
  for (int l = 1; l < depth; ++l) dims.push_back(hidden);
  dims.push_back(n);
  const std::vector<std::string> activations(static_cast<std::size_t>(depth), fixture);

  std::vector<CsgenRow> rows(static_cast<std::size_t>(trials));
  parallel_for_impl(trials, parallel, [&](long long t) {
    CsgenRow& row = rows[static_cast<std::size_t>(t)];
    const std::uint64_t trial_seed = rng::derive(base_seed, static_cast<std::uint64_t>(t));
    row.seed = trial_seed;

    const Generator G = random_generator(dims, activations, rng::derive(trial_seed, 1));
    const SketchMatrix A = sample_sketch(m, n, rng::derive(trial_seed, 2));

    if (do_srec && srec_pairs > 0) {
      SamplePlan pair_plan = default_plan(srec_pairs, n, rng::derive(trial_seed, 6));
      const SRECReport srec = check_srec(A, G, pair_plan, eps1, eps2);
      row.srec_slack = srec.worst_slack;
      row.srec_pass = srec.pass;
    }

    if (do_recover) {
      std::vector<double> z_star(static_cast<std::size_t>(k));
      rng::fill_gaussian(z_star, rng::derive(trial_seed, 3), 0);
      const std::vector<double> x_star = generate(G, z_star);
      std::vector<double> y = apply(A, x_star);
      if (noise_rel > 0.0) {
        std::vector<double> eta(y.size());
        rng::fill_gaussian(eta, rng::derive(trial_seed, 4), 0);
        const double scale = noise_rel * la::nrm2(y) / la::nrm2(eta);
        for (std::size_t i = 0; i < y.size(); ++i) {
          eta[i] *= scale;
          y[i] += eta[i];
        }
        row.noise_norm = la::nrm2(eta);
      }

      RecoverOptions opts;
      opts.restarts = restarts;
      opts.iters = iters;
      opts.step = step;
      opts.seed = rng::derive(trial_seed, 5);
      RecoveryResult result = recover(G, A, y, opts);

      double err2 = 0.0;
      for (std::size_t i = 0; i < x_star.size(); ++i) {
        const double d = result.x_hat[i] - x_star[i];
        err2 += d * d;
      }
      row.residual = result.residual;
      row.recon_error = std::sqrt(err2);
      row.restarts_used = result.restarts_used;
      if (noise_rel > 0.0) {
        row.ratio = row.recon_error / row.noise_norm;
        row.pass = row.recon_error <= recon_noise_factor * row.noise_norm;
      } else {
        const double nx = la::nrm2(x_star);
        row.ratio = nx > 0.0 ? row.recon_error / nx : row.recon_error;
        row.pass = row.recon_error <= recon_rel_tol * nx;
      }
      if (do_srec && srec_pairs > 0) row.pass = row.pass && row.srec_pass;
    } else {
      row.pass = row.srec_pass;
    }
  });

  SweepSummary summary;
  summary.csv += "# nlse csgen, task=" + task + "\n";
  summary.csv += config_echo(cfg, base_seed);
  summary.csv +=
      "trial,seed,k,n,m,depth,fixture,noise_norm,residual,recon_error,restarts_used,"
      "srec_slack,pass\n";

  std::vector<double> residuals, recons, ratios, noises;
  double min_slack = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const CsgenRow& row = rows[static_cast<std::size_t>(t)];
    summary.csv += join_csv({format_u64(static_cast<std::uint64_t>(t)), format_u64(row.seed),
                             format_u64(k), format_u64(n), format_u64(m), format_u64(depth),
                             fixture, format_double(row.noise_norm), format_double(row.residual),
                             format_double(row.recon_error), format_u64(row.restarts_used),
                             format_double(row.srec_slack), row.pass ? "1" : "0"});
    if (do_recover) {
      residuals.push_back(row.residual);
      recons.push_back(row.recon_error);
      ratios.push_back(row.ratio);
      noises.push_back(row.noise_norm);
    }
    if (do_srec && srec_pairs > 0) min_slack = std::min(min_slack, row.srec_slack);
  }

  // Aggregate: medians for the recovery stats (the acceptance criteria are
  // median-based), min slack for the pair checks, pass = criterion verdict.
  bool agg_pass = true;
  if (do_recover) {
    const double med_ratio = median(ratios);
    agg_pass = med_ratio <= (noise_rel > 0.0 ? recon_noise_factor : recon_rel_tol);
  }
  if (do_srec && srec_pairs > 0) {
    const double frac =
        static_cast<double>(std::count_if(rows.begin(), rows.end(),
                                          [](const CsgenRow& r) { return r.srec_pass; })) /
        static_cast<double>(trials);
    agg_pass = agg_pass && frac >= pass_fraction;
  }
  summary.csv += join_csv(
      {"agg", format_u64(base_seed), format_u64(k), format_u64(n), format_u64(m),
       format_u64(depth), fixture, format_double(median(noises)),
       format_double(median(residuals)), format_double(median(recons)),
       format_u64(static_cast<std::uint64_t>(restarts) + 1),
       format_double(do_srec && srec_pairs > 0 ? min_slack
                                               : std::numeric_limits<double>::quiet_NaN()),
       agg_pass ? "1" : "0"});

  summary.rows = trials;
  summary.cells = 1;
  summary.cells_failed = agg_pass ? 0 : 1;
  return summary;
}

}  // namespace nlse
