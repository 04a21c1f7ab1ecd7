// Acceptance gate: one self-contained check per shipped guarantee, each
// printing exactly one [PASS]/[FAIL] line.  Run everything (no arguments) or
// a single check with --criterion N.  Exits nonzero when any selected check
// fails.  Checks 3/4/8/9 drive the production sweep drivers; the rest call
// the library directly.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "configfile.hpp"
#include "csrecover.hpp"
#include "distortion.hpp"
#include "linalg.hpp"
#include "pwl.hpp"
#include "regions.hpp"
#include "rng.hpp"
#include "sketch.hpp"
#include "subspace.hpp"
#include "sweep.hpp"

namespace {

using namespace nlse;

bool fail(std::string& detail, std::string msg) {
  detail = std::move(msg);
  return false;
}

std::string fmt(double v) { return format_double(v); }

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

// Smallest per-cell pass fraction among the aggregate rows of a distortion
// sweep CSV (the fraction is the final field of every ",agg," row).
double min_agg_fraction(const std::string& csv) {
  double worst = 1.0;
  std::istringstream in(csv);
  std::string line;
  bool seen = false;
  while (std::getline(in, line)) {
    if (line.find(",agg,") == std::string::npos) continue;
    const std::size_t comma = line.rfind(',');
    if (comma == std::string::npos) continue;
    worst = std::min(worst, std::strtod(line.c_str() + comma + 1, nullptr));
    seen = true;
  }
  return seen ? worst : -1.0;
}

// ---- criterion 1: catalog condition certificates ---------------------------

bool criterion1(std::string& detail) {
  int certificates = 0;
  for (const Nonlinearity* nl : catalog()) {
    const CertResult c1 = verify_condition1(*nl, nl->cc.a);
    if (!c1.pass)
      return fail(detail, nl->name + ": |f''| exceeds a=" + fmt(nl->cc.a) + " at x=" +
                              fmt(c1.violation_x) + " (value " + fmt(c1.violation_value) + ")");
    if (c1.observed < nl->cc.a - 1e-4)
      return fail(detail, nl->name + ": curvature constant overstated (sup " +
                              fmt(c1.observed) + " vs claimed " + fmt(nl->cc.a) + ")");
    ++certificates;
    for (const double eps : {0.5, 0.25, 0.1}) {
      const CertResult c2 = verify_condition2(*nl, eps);
      if (!c2.pass)
        return fail(detail, nl->name + ": asymptote gap " + fmt(c2.observed) + " > eps=" +
                                fmt(eps) + " at x=" + fmt(c2.argmax));
      ++certificates;
    }
    if (nl->claims_condition3()) {
      const CertResult c3 = verify_condition3(*nl);
      if (!c3.pass)
        return fail(detail, nl->name + ": inverse linearity ratio " + fmt(c3.observed) +
                                " > g3=" + fmt((*nl->cc.g)[2]));
      ++certificates;
    }
  }
  detail = std::to_string(certificates) +
           " certificates pass across 9 fixtures (curvature within 1e-6, asymptote gaps at "
           "eps in {0.5,0.25,0.1}, inverse linearity where claimed)";
  return true;
}

// ---- criterion 2: PWL uniform error and piece-count scaling ----------------

bool criterion2(std::string& detail) {
  const std::vector<double> epss{0.5, 0.1, 0.01};
  double steepest = 0.0, shallowest = -10.0;
  for (const Nonlinearity* nl : catalog()) {
    std::vector<double> log_eps, log_interior;
    for (const double eps : epss) {
      const PWLFunction pwl = build_pwl(*nl, eps);
      const double gamma = knot_stride(*nl, eps);
      const double half = 2.0 * nl->cc.c / std::pow(eps, nl->cc.b);
      const double err = uniform_error(*nl, pwl, half, gamma / 20.0);
      if (err > eps * (1.0 + 1e-9) + 1e-12)
        return fail(detail, nl->name + " eps=" + fmt(eps) + ": uniform error " + fmt(err) +
                                " exceeds eps");
      log_eps.push_back(std::log(eps));
      log_interior.push_back(std::log(static_cast<double>(pwl.piece_count()) - 2.0));
    }
    if (nl->affine) continue;  // a single exact line has no interior scaling
    const double slope = fit_slope(log_eps, log_interior);
    if (slope < -1.7 || slope > -1.3)
      return fail(detail,
                  nl->name + ": piece-count exponent " + fmt(slope) + " outside [-1.7,-1.3]");
    steepest = std::min(steepest, slope);
    shallowest = std::max(shallowest, slope);
  }
  detail = "uniform error <= eps for 9 fixtures x eps in {0.5,0.1,0.01}; interior piece-count "
           "exponents in [" +
           fmt(steepest) + ", " + fmt(shallowest) + "] (target [-1.7,-1.3])";
  return true;
}

// ---- criterion 3: linear-case embedding sanity ------------------------------

bool criterion3(std::string& detail) {
  const Config cfg = Config::parse_string(
      "fixture = identity\n"
      "mode = relative\n"
      "k = 4\n"
      "n = 256\n"
      "eps = 0.25\n"
      "delta = 0.05\n"
      "C = 6\n"
      "trials = 100\n"
      "samples = 1000\n"
      "pass_fraction = 0.95\n"
      "parallel = 8\n");
  const SweepSummary s = run_distortion_sweep(cfg, 42);
  const double frac = min_agg_fraction(s.csv);
  if (s.cells_failed != 0)
    return fail(detail, "identity relative cell below 95/100 (pass fraction " + fmt(frac) + ")");
  detail = "identity, k=4, n=256, eps=0.25, m from the dimension formula: pass fraction " +
           fmt(frac) + " over 100 trials x 1000 samples (target 0.95)";
  return true;
}

// ---- criterion 4: additive embedding on bounded fixtures --------------------

bool criterion4(std::string& detail) {
  const Config cfg = Config::parse_string(
      "fixture = sigmoid\n"
      "fixture = gaussian\n"
      "mode = additive\n"
      "k = 4\n"
      "n = 256\n"
      "eps1 = 0.25\n"
      "eps2 = 0.1\n"
      "delta = 0.05\n"
      "C = 6\n"
      "trials = 100\n"
      "samples = 1000\n"
      "pass_fraction = 0.95\n"
      "parallel = 8\n");
  const SweepSummary s = run_distortion_sweep(cfg, 42);
  const double frac = min_agg_fraction(s.csv);
  if (s.cells_failed != 0)
    return fail(detail, std::to_string(s.cells_failed) +
                            " cell(s) below 95/100 (worst pass fraction " + fmt(frac) + ")");
  detail = "sigmoid and gaussian, additive_fit(0.25) <= 0.1 with threshold probes: worst cell "
           "pass fraction " +
           fmt(frac) + " over 100 trials (target 0.95)";
  return true;
}

// ---- criterion 5: relative embedding with both norm regimes -----------------

bool criterion5(std::string& detail) {
  const double eps = 0.3;
  const int k = 4, n = 256, trials = 100, samples = 1000;
  DimSpec spec;
  spec.mode = DimMode::relative;
  spec.k = k;
  spec.n = n;
  spec.eps = eps;
  spec.delta = 0.05;
  spec.C = kDefaultDimConstant;
  const int m = required_dim(spec).m;

  int worst_passed = trials;
  for (const char* name : {"tanh", "elu", "softsign"}) {
    const Nonlinearity& nl = *find_nonlinearity(name);
    const std::uint64_t fixture_seed = rng::derive(42, std::hash<std::string>{}(name));
    int passed = 0;
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t ts = rng::derive(fixture_seed, static_cast<std::uint64_t>(t));
      const SketchMatrix pi = sample_sketch(m, n, rng::derive(ts, 1));
      const Subspace Z = random_subspace(n, k, rng::derive(ts, 2));
      const SamplePlan plan = default_plan(samples, n, rng::derive(ts, 3));
      const double threshold = std::min((*nl.cc.g)[0], eps) / std::sqrt(n);
      ProbeList extra = threshold_probes(nl, Z, threshold, 8, rng::derive(ts, 4));
      const ProbeList discs = disc_probes(nl, Z, 2);
      extra.insert(extra.end(), discs.begin(), discs.end());
      const DistortionReport rep = measure_relative(pi, nl, Z, plan, eps, extra);
      if (rep.count_SL <= 0 || rep.count_SU <= 0)
        return fail(detail, nl.name + " trial " + std::to_string(t) +
                                ": a norm regime went unprobed (above threshold: " +
                                std::to_string(rep.count_SL) + ", below: " +
                                std::to_string(rep.count_SU) + ")");
      passed += rep.pass ? 1 : 0;
    }
    if (passed < 95)
      return fail(detail,
                  nl.name + ": " + std::to_string(passed) + "/100 trials passed (need 95)");
    worst_passed = std::min(worst_passed, passed);
  }
  detail = "tanh/elu/softsign, eps=0.3, radii down to 1e-4*sqrt(n), both norm regimes probed "
           "every trial: worst fixture " +
           std::to_string(worst_passed) + "/100 trials (need 95)";
  return true;
}

// ---- criterion 6: region census ---------------------------------------------

// t-piece shape with generic breakpoints 0.37 + 0.83*j and distinct slopes
// (continuity handled by make_pwl's intercept validation).
PWLFunction synthetic_shape(int t) {
  std::vector<double> bps;
  std::vector<PWLFunction::Piece> pieces;
  double slope = 0.5, intercept = 0.0;
  pieces.push_back({slope, intercept});
  for (int j = 0; j + 1 < t; ++j) {
    const double bp = 0.37 + 0.83 * j;
    bps.push_back(bp);
    const double next = slope + 0.61;
    intercept += (slope - next) * bp;
    slope = next;
    pieces.push_back({slope, intercept});
  }
  return make_pwl(bps, pieces, "synthetic");
}

bool criterion6(std::string& detail) {
  for (const int n : {3, 5, 8}) {
    for (const int t : {2, 3, 5}) {
      const Subspace Z = random_subspace(n, 1, 11);
      const RegionCensus c = census(synthetic_shape(t), Z, CensusMethod::exact_1d, 0, 11);
      const long long expected = static_cast<long long>(n) * (t - 1) + 1;
      if (c.degenerate)
        return fail(detail, "exact_1d n=" + std::to_string(n) + " t=" + std::to_string(t) +
                                ": degenerate crossing pattern at a generic seed");
      if (c.distinct_patterns != expected)
        return fail(detail, "exact_1d n=" + std::to_string(n) + " t=" + std::to_string(t) +
                                ": counted " + std::to_string(c.distinct_patterns) +
                                ", expected " + std::to_string(expected));
      if (static_cast<double>(c.distinct_patterns) > c.bound)
        return fail(detail, "exact_1d count exceeds the arrangement bound");
    }
  }
  const Subspace Z2 = random_subspace(2, 2, 7);
  const RegionCensus c2 = census(synthetic_shape(2), Z2, CensusMethod::sign_sample, 20000, 7);
  if (c2.distinct_patterns != 4)
    return fail(detail, "sign_sample k=2 n=2 t=2: found " +
                            std::to_string(c2.distinct_patterns) + " patterns, expected 4");
  if (static_cast<double>(c2.distinct_patterns) > c2.bound)
    return fail(detail, "sign_sample count exceeds the arrangement bound");
  detail = "exact_1d counts equal n*(t-1)+1 for n in {3,5,8} x t in {2,3,5}; sign_sample finds "
           "exactly 4 patterns at k=2, n=2, t=2; every count within the arrangement bound";
  return true;
}

// ---- criterion 7: spectral norm bound ----------------------------------------

bool criterion7(std::string& detail) {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const SketchMatrix S = sample_sketch(64, 256, seed);
    const double sn = spectral_norm(S, 100);
    worst = std::max(worst, sn);
    if (sn > 6.0)
      return fail(detail, "seed " + std::to_string(seed) + ": spectral norm " + fmt(sn) +
                              " exceeds 3*sqrt(n)/sqrt(m) = 6");
  }
  detail = "max spectral norm " + fmt(worst) + " over 100 seeds at m=64, n=256 (bound 6)";
  return true;
}

// ---- criterion 8: set-restricted eigenvalue check ----------------------------

bool criterion8(std::string& detail) {
  DimSpec spec;
  spec.mode = DimMode::srec;
  spec.k = 4;
  spec.n = 128;
  spec.eps1 = 0.5;
  spec.eps2 = 0.1;
  spec.delta = 0.05;
  spec.C = kDefaultDimConstant;
  const DimResult dim = required_dim(spec);
  const Config cfg = Config::parse_string(
      "task = srec\n"
      "fixture = sigmoid\n"
      "k = 4\n"
      "n = 128\n"
      "depth = 2\n"
      "m = " + std::to_string(dim.m) + "\n"
      "trials = 100\n"
      "srec_pairs = 10000\n"
      "eps1 = 0.5\n"
      "eps2 = 0.1\n"
      "pass_fraction = 0.95\n"
      "parallel = 8\n");
  const SweepSummary s = run_csgen(cfg, 42);
  if (s.cells_failed != 0)
    return fail(detail, "pair-check pass fraction below 0.95 at m=" + std::to_string(dim.m));
  detail = "2-layer sigmoid generator, m=" + std::to_string(dim.m) + " (formula gave " +
           std::to_string(dim.m_raw) + ", clamped to n): >= 95/100 trials satisfy the pair "
           "condition over 10^4 mixed-radius pairs";
  return true;
}

// ---- criterion 9: recovery medians -------------------------------------------

bool criterion9(std::string& detail) {
  const std::string base =
      "task = recover\n"
      "fixture = tanh\n"
      "k = 4\n"
      "n = 128\n"
      "m = 64\n"
      "depth = 2\n"
      "trials = 20\n"
      "restarts = 20\n"
      "iters = 2000\n"
      "step = 1\n"
      "recon_rel_tol = 0.01\n"
      "recon_noise_factor = 5\n"
      "parallel = 8\n";
  const SweepSummary clean =
      run_csgen(Config::parse_string(base + "noise_rel = 0\n"), 42);
  if (clean.cells_failed != 0)
    return fail(detail, "noiseless median reconstruction error exceeds 1e-2 * ||G(z*)||");
  const SweepSummary noisy =
      run_csgen(Config::parse_string(base + "noise_rel = 0.1\n"), 42);
  if (noisy.cells_failed != 0)
    return fail(detail, "noisy median reconstruction error exceeds 5 * ||noise||");
  detail = "2-layer tanh, k=4, n=128, m=64, 20 restarts, 20 seeds: noiseless median within "
           "1e-2 * ||G(z*)||; noisy (||noise|| = 0.1 * signal) median within 5 * ||noise||";
  return true;
}

// ---- criterion 10: depth-d surrogate ------------------------------------------

bool criterion10(std::string& detail) {
  const int k = 4, n = 64, hidden = 64;
  const Generator G =
      random_generator({k, hidden, hidden, n}, {"tanh", "tanh", "tanh"}, 777);
  const double L = estimate_tail_lipschitz(G, default_plan(200, k, 888));

  const SamplePlan eval_plan = default_plan(500, k, 999);
  std::vector<double> worst_err;
  for (const double eps2 : {0.2, 0.1}) {
    const Generator Gs = deep_pwl_surrogate(G, eps2, L);
    double worst = 0.0;
    for (int i = 0; i < eval_plan.count; ++i) {
      const std::vector<double> z = sample_z(eval_plan, k, static_cast<std::uint64_t>(i));
      const std::vector<double> a = generate(G, z);
      const std::vector<double> b = generate(Gs, z);
      double d2 = 0.0;
      for (std::size_t j = 0; j < a.size(); ++j) d2 += (a[j] - b[j]) * (a[j] - b[j]);
      worst = std::max(worst, std::sqrt(d2));
    }
    const double budget = eps2 / std::sqrt(static_cast<double>(n));
    if (worst > budget)
      return fail(detail, "eps2=" + fmt(eps2) + ": max ||G - G~|| = " + fmt(worst) +
                              " exceeds eps2/sqrt(n) = " + fmt(budget));
    worst_err.push_back(worst);
  }
  const double ratio = worst_err[1] / worst_err[0];
  if (ratio < 0.4 || ratio > 0.6)
    return fail(detail,
                "halving eps2 scaled the max error by " + fmt(ratio) + ", outside [0.4,0.6]");
  detail = "3-layer tanh generator: max ||G - G~|| = " + fmt(worst_err[0]) + " (eps2=0.2) and " +
           fmt(worst_err[1]) + " (eps2=0.1), both within eps2/sqrt(n); halving ratio " +
           fmt(ratio) + " in [0.4,0.6]";
  return true;
}

// ---- criterion 11: byte-identical outputs --------------------------------------

#ifndef NLSE_CLI_PATH
#error "NLSE_CLI_PATH must point at the command-line binary"
#endif

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + NLSE_CLI_PATH + "\" " + args;
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  return static_cast<bool>(out);
}

bool criterion11(std::string& detail) {
  const std::vector<std::string> temps{
      "acc11_dist.cfg",  "acc11_dist8.cfg", "acc11_dist_a.csv", "acc11_dist_b.csv",
      "acc11_dist_c.csv", "acc11_cs.cfg",   "acc11_cs8.cfg",    "acc11_cs_a.csv",
      "acc11_cs_b.csv",  "acc11_cs_c.csv",  "acc11_cat_a.json", "acc11_cat_b.json",
      "acc11_knots_a.csv", "acc11_knots_b.csv", "acc11_reg_a.json", "acc11_reg_b.json",
      "acc11_srec_a.json", "acc11_srec_b.json"};
  struct Cleanup {
    const std::vector<std::string>& files;
    ~Cleanup() {
      for (const std::string& f : files) std::remove(f.c_str());
    }
  } cleanup{temps};

  const std::string dist_cfg =
      "fixture = tanh\nmode = relative\nk = 2\nn = 32\neps = 0.3\n"
      "trials = 8\nsamples = 200\nbase_seed = 12\n";
  if (!write_file("acc11_dist.cfg", dist_cfg + "parallel = 1\n") ||
      !write_file("acc11_dist8.cfg", dist_cfg + "parallel = 8\n"))
    return fail(detail, "could not write temporary config files");
  const std::string cs_cfg =
      "task = both\nfixture = tanh\nk = 2\nn = 16\nhidden = 16\ndepth = 2\nm = 16\n"
      "trials = 4\nrestarts = 3\niters = 200\nsrec_pairs = 300\neps1 = 0.5\neps2 = 0.1\n"
      "base_seed = 7\n";
  if (!write_file("acc11_cs.cfg", cs_cfg + "parallel = 1\n") ||
      !write_file("acc11_cs8.cfg", cs_cfg + "parallel = 8\n"))
    return fail(detail, "could not write temporary config files");

  // Sweeps may legitimately exit 1 (a cell under target at toy scale); only
  // the bytes matter here.
  struct Step {
    std::string args;
    int max_rc;
  };
  const std::vector<Step> steps{
      {"distortion run --config acc11_dist.cfg --out acc11_dist_a.csv > /dev/null", 1},
      {"distortion run --config acc11_dist.cfg --out acc11_dist_b.csv > /dev/null", 1},
      {"distortion run --config acc11_dist8.cfg --out acc11_dist_c.csv > /dev/null", 1},
      {"csgen run --config acc11_cs.cfg --out acc11_cs_a.csv > /dev/null", 1},
      {"csgen run --config acc11_cs.cfg --out acc11_cs_b.csv > /dev/null", 1},
      {"csgen run --config acc11_cs8.cfg --out acc11_cs_c.csv > /dev/null", 1},
      {"catalog verify --fixture tanh --eps 0.5 --eps 0.1 --out acc11_cat_a.json", 0},
      {"catalog verify --fixture tanh --eps 0.5 --eps 0.1 --out acc11_cat_b.json", 0},
      {"pwl build --fixture gaussian --eps 0.125 --dump acc11_knots_a.csv > /dev/null", 0},
      {"pwl build --fixture gaussian --eps 0.125 --dump acc11_knots_b.csv > /dev/null", 0},
      {"regions census --fixture tanh --eps 0.1 --k 1 --n 4 --method exact_1d --seed 3"
       " > acc11_reg_a.json", 0},
      {"regions census --fixture tanh --eps 0.1 --k 1 --n 4 --method exact_1d --seed 3"
       " > acc11_reg_b.json", 0},
      {"csgen srec --fixture sigmoid --k 2 --n 16 --m 16 --pairs 200 --seed 5"
       " > acc11_srec_a.json", 1},
      {"csgen srec --fixture sigmoid --k 2 --n 16 --m 16 --pairs 200 --seed 5"
       " > acc11_srec_b.json", 1},
  };
  for (const Step& step : steps) {
    const int rc = run_cli(step.args);
    if (rc < 0 || rc > step.max_rc)
      return fail(detail, "command exited with " + std::to_string(rc) + ": " + step.args);
  }

  const std::vector<std::pair<std::string, std::string>> pairs{
      {"acc11_dist_a.csv", "acc11_dist_b.csv"},   // rerun, same seed
      {"acc11_dist_a.csv", "acc11_dist_c.csv"},   // parallel 1 vs 8
      {"acc11_cs_a.csv", "acc11_cs_b.csv"},
      {"acc11_cs_a.csv", "acc11_cs_c.csv"},
      {"acc11_cat_a.json", "acc11_cat_b.json"},
      {"acc11_knots_a.csv", "acc11_knots_b.csv"},
      {"acc11_reg_a.json", "acc11_reg_b.json"},
      {"acc11_srec_a.json", "acc11_srec_b.json"},
  };
  for (const auto& [lhs, rhs] : pairs) {
    std::string a, b;
    if (!read_file(lhs, a) || !read_file(rhs, b))
      return fail(detail, "missing output file: " + lhs + " / " + rhs);
    if (a.empty()) return fail(detail, "empty output file: " + lhs);
    if (a != b) return fail(detail, "outputs differ: " + lhs + " vs " + rhs);
  }
  detail = "distortion/csgen CSV, catalog/census/pair-check JSON, and knot dumps are "
           "byte-identical across reruns and across parallelism 1 vs 8";
  return true;
}

struct Entry {
  int id;
  const char* name;
  bool (*fn)(std::string&);
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<Entry> entries{
      {1, "catalog condition certificates", &criterion1},
      {2, "piecewise-linear approximation", &criterion2},
      {3, "linear-case embedding sanity", &criterion3},
      {4, "additive embedding", &criterion4},
      {5, "relative embedding", &criterion5},
      {6, "region census", &criterion6},
      {7, "sketch spectral norm", &criterion7},
      {8, "pair-distance preservation", &criterion8},
      {9, "generative recovery", &criterion9},
      {10, "deep surrogate accuracy", &criterion10},
      {11, "deterministic outputs", &criterion11},
  };

  int failures = 0;
  bool ran_any = false;
  for (const Entry& e : entries) {
    if (only != 0 && e.id != only) continue;
    ran_any = true;
    std::string detail;
    bool ok = false;
    try {
      ok = e.fn(detail);
    } catch (const std::exception& ex) {
      detail = std::string("unexpected exception: ") + ex.what();
    }
    std::printf("[%s] criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", e.id, e.name,
                detail.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
  }
  if (!ran_any) {
    std::fprintf(stderr, "unknown criterion %d\n", only);
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
