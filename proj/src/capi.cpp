// C boundary: translates between the C++ core (exceptions, std types) and the
// plain-C surface in include/nlse.h (status codes, opaque handles).

#include "nlse.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include "catalog.hpp"
#include "configfile.hpp"
#include "csrecover.hpp"
#include "error.hpp"
#include "pwl.hpp"
#include "regions.hpp"
#include "rng.hpp"
#include "sketch.hpp"
#include "subspace.hpp"
#include "sweep.hpp"

struct nlse_pwl {
  nlse::PWLFunction fn;
};

struct nlse_sketch {
  nlse::SketchMatrix mat;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
nlse_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return NLSE_OK;
  } catch (const nlse::Error& e) {
    g_last_error = e.what();
    return static_cast<nlse_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NLSE_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return NLSE_E_INTERNAL;
  }
}

nlse_status arg_error(const char* what) {
  g_last_error = what;
  return NLSE_E_INVALID_ARGUMENT;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  nlse::require(out.good(), nlse::Errc::io, "cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  nlse::require(out.good(), nlse::Errc::io, "write failed on '" + path + "'");
}

void fill_cert(const nlse::CertResult& r, nlse_cert_result* out) {
  out->condition = r.condition;
  out->eps = r.eps;
  out->claimed = r.claimed;
  out->observed = r.observed;
  out->argmax = r.argmax;
  out->pass = r.pass ? 1 : 0;
  out->has_violation = r.has_violation ? 1 : 0;
  out->violation_x = r.violation_x;
  out->violation_value = r.violation_value;
}

const nlse::Nonlinearity& fixture_or_throw(const char* name) {
  nlse::require(name != nullptr, nlse::Errc::invalid_argument, "fixture name is null");
  const nlse::Nonlinearity* nl = nlse::find_nonlinearity(name);
  nlse::require(nl != nullptr, nlse::Errc::not_found,
                std::string("unknown fixture '") + name + "'");
  return *nl;
}

std::uint64_t resolve_seed(const nlse::Config& cfg, int have_override, uint64_t override_value) {
  if (have_override) return override_value;
  return cfg.get_u64_or("base_seed", 1);
}

}  // namespace

extern "C" {

const char* nlse_last_error(void) { return g_last_error.c_str(); }

const char* nlse_version(void) { return "1.0.0"; }

int nlse_catalog_count(void) { return static_cast<int>(nlse::catalog().size()); }

const char* nlse_catalog_name(int index) {
  const auto& cat = nlse::catalog();
  if (index < 0 || index >= static_cast<int>(cat.size())) return nullptr;
  return cat[static_cast<std::size_t>(index)]->name.c_str();
}

nlse_status nlse_fixture_get(const char* fixture, nlse_fixture_info* out) {
  if (out == nullptr) return arg_error("nlse_fixture_get: out is null");
  return guarded([&] {
    const nlse::Nonlinearity& nl = fixture_or_throw(fixture);
    out->a = nl.cc.a;
    out->b = nl.cc.b;
    out->c = nl.cc.c;
    out->d1 = nl.cc.asym.d1;
    out->e1 = nl.cc.asym.e1;
    out->d2 = nl.cc.asym.d2;
    out->e2 = nl.cc.asym.e2;
    out->has_g = nl.claims_condition3() ? 1 : 0;
    if (nl.cc.g.has_value()) {
      out->g1 = (*nl.cc.g)[0];
      out->g2 = (*nl.cc.g)[1];
      out->g3 = (*nl.cc.g)[2];
    } else {
      out->g1 = out->g2 = out->g3 = std::numeric_limits<double>::quiet_NaN();
    }
    out->bounded = nl.bound.has_value() ? 1 : 0;
    out->bound = nl.bound.value_or(std::numeric_limits<double>::infinity());
    out->affine = nl.affine ? 1 : 0;
  });
}

nlse_status nlse_verify_condition(const char* fixture, int condition, double eps,
                                  nlse_cert_result* out) {
  if (out == nullptr) return arg_error("nlse_verify_condition: out is null");
  return guarded([&] {
    const nlse::Nonlinearity& nl = fixture_or_throw(fixture);
    nlse::CertResult r;
    switch (condition) {
      case 1:
        r = nlse::verify_condition1(nl, nl.cc.a);
        break;
      case 2:
        r = nlse::verify_condition2(nl, eps);
        break;
      case 3:
        r = nlse::verify_condition3(nl);
        break;
      default:
        nlse::fail(nlse::Errc::invalid_argument, "condition must be 1, 2, or 3");
    }
    fill_cert(r, out);
  });
}

nlse_status nlse_pwl_build(const char* fixture, double eps, nlse_pwl** out) {
  if (out == nullptr) return arg_error("nlse_pwl_build: out is null");
  *out = nullptr;
  return guarded([&] {
    const nlse::Nonlinearity& nl = fixture_or_throw(fixture);
    auto handle = new nlse_pwl{nlse::build_pwl(nl, eps)};
    *out = handle;
  });
}

void nlse_pwl_free(nlse_pwl* pwl) { delete pwl; }

size_t nlse_pwl_piece_count(const nlse_pwl* pwl) { return pwl ? pwl->fn.pieces.size() : 0; }

size_t nlse_pwl_breakpoint_count(const nlse_pwl* pwl) {
  return pwl ? pwl->fn.breakpoints.size() : 0;
}

nlse_status nlse_pwl_knots(const nlse_pwl* pwl, double* breakpoints, double* slopes,
                           double* intercepts) {
  if (pwl == nullptr) return arg_error("nlse_pwl_knots: pwl is null");
  return guarded([&] {
    if (breakpoints != nullptr)
      std::memcpy(breakpoints, pwl->fn.breakpoints.data(),
                  pwl->fn.breakpoints.size() * sizeof(double));
    if (slopes != nullptr || intercepts != nullptr) {
      for (std::size_t i = 0; i < pwl->fn.pieces.size(); ++i) {
        if (slopes != nullptr) slopes[i] = pwl->fn.pieces[i].slope;
        if (intercepts != nullptr) intercepts[i] = pwl->fn.pieces[i].intercept;
      }
    }
  });
}

double nlse_pwl_eval(const nlse_pwl* pwl, double x) {
  if (pwl == nullptr) return std::numeric_limits<double>::quiet_NaN();
  return nlse::eval_pwl(pwl->fn, x);
}

nlse_status nlse_pwl_uniform_error(const nlse_pwl* pwl, double half_width, double spacing,
                                   double* out) {
  if (pwl == nullptr || out == nullptr)
    return arg_error("nlse_pwl_uniform_error: null argument");
  return guarded([&] {
    const nlse::Nonlinearity& nl = fixture_or_throw(pwl->fn.source_name.c_str());
    *out = nlse::uniform_error(nl, pwl->fn, half_width, spacing);
  });
}

nlse_status nlse_required_dim(const char* mode, int k, int n, int t, double eps1, double eps2,
                              double eps, double delta, double C, int* m, int* clamped) {
  if (mode == nullptr || m == nullptr) return arg_error("nlse_required_dim: null argument");
  return guarded([&] {
    nlse::DimSpec spec;
    const std::string mode_s = mode;
    if (mode_s == "additive")
      spec.mode = nlse::DimMode::additive;
    else if (mode_s == "piecewise")
      spec.mode = nlse::DimMode::piecewise;
    else if (mode_s == "relative")
      spec.mode = nlse::DimMode::relative;
    else if (mode_s == "srec")
      spec.mode = nlse::DimMode::srec;
    else
      nlse::fail(nlse::Errc::invalid_argument,
                 "mode must be additive, piecewise, relative, or srec");
    spec.k = k;
    spec.n = n;
    spec.t = t;
    spec.eps1 = eps1;
    spec.eps2 = eps2;
    spec.eps = eps;
    spec.delta = delta;
    spec.C = C;
    const nlse::DimResult res = nlse::required_dim(spec);
    *m = res.m;
    if (clamped != nullptr) *clamped = res.clamped ? 1 : 0;
  });
}

nlse_status nlse_sketch_sample(int m, int n, uint64_t seed, nlse_sketch** out) {
  if (out == nullptr) return arg_error("nlse_sketch_sample: out is null");
  *out = nullptr;
  return guarded([&] { *out = new nlse_sketch{nlse::sample_sketch(m, n, seed)}; });
}

void nlse_sketch_free(nlse_sketch* s) { delete s; }

nlse_status nlse_sketch_dims(const nlse_sketch* s, int* m, int* n) {
  if (s == nullptr) return arg_error("nlse_sketch_dims: sketch is null");
  if (m != nullptr) *m = s->mat.m;
  if (n != nullptr) *n = s->mat.n;
  return NLSE_OK;
}

nlse_status nlse_sketch_apply(const nlse_sketch* s, const double* x, size_t x_len, double* y,
                              size_t y_len) {
  if (s == nullptr || x == nullptr || y == nullptr)
    return arg_error("nlse_sketch_apply: null argument");
  return guarded([&] {
    nlse::require(x_len == static_cast<size_t>(s->mat.n), nlse::Errc::dimension_mismatch,
                  "nlse_sketch_apply: x length must equal the sketch width");
    nlse::require(y_len == static_cast<size_t>(s->mat.m), nlse::Errc::dimension_mismatch,
                  "nlse_sketch_apply: y length must equal the sketch height");
    nlse::apply(s->mat, x, y);
  });
}

nlse_status nlse_sketch_spectral_norm(const nlse_sketch* s, int iters, double* out) {
  if (s == nullptr || out == nullptr) return arg_error("nlse_sketch_spectral_norm: null argument");
  return guarded([&] { *out = nlse::spectral_norm(s->mat, iters); });
}

nlse_status nlse_region_census_run(const char* fixture, double eps, int k, int n,
                                   const char* method, long long budget, uint64_t seed,
                                   nlse_region_census* out) {
  if (out == nullptr || method == nullptr)
    return arg_error("nlse_region_census_run: null argument");
  return guarded([&] {
    const nlse::Nonlinearity& nl = fixture_or_throw(fixture);
    const std::string method_s = method;
    nlse::CensusMethod cm;
    if (method_s == "exact_1d")
      cm = nlse::CensusMethod::exact_1d;
    else if (method_s == "sign_sample")
      cm = nlse::CensusMethod::sign_sample;
    else
      nlse::fail(nlse::Errc::invalid_argument, "method must be exact_1d or sign_sample");

    const nlse::PWLFunction pwl = nlse::build_pwl(nl, eps);
    const nlse::Subspace Z = nlse::random_subspace(n, k, seed);
    const nlse::RegionCensus census = nlse::census(pwl, Z, cm, budget, seed);
    out->k = census.k;
    out->n = census.n;
    out->t = census.t;
    out->distinct_patterns = census.distinct_patterns;
    out->bound = census.bound;
    out->samples_used = census.samples_used;
    out->degenerate = census.degenerate ? 1 : 0;
    out->perturbed = census.perturbed;
  });
}

nlse_status nlse_srec_check(const char* fixture, int k, int n, int hidden, int depth, int m,
                            long long pairs, double eps1, double eps2, uint64_t seed,
                            nlse_srec_report* out) {
  if (out == nullptr) return arg_error("nlse_srec_check: out is null");
  return guarded([&] {
    const nlse::Nonlinearity& nl = fixture_or_throw(fixture);
    nlse::require(depth >= 1, nlse::Errc::invalid_argument, "nlse_srec_check: depth must be >= 1");
    nlse::require(pairs >= 1 && pairs <= (1 << 30), nlse::Errc::invalid_argument,
                  "nlse_srec_check: pairs must be in [1, 2^30]");
    std::vector<int> dims{k};
    for (int l = 1; l < depth; ++l) dims.push_back(hidden);
    dims.push_back(n);
    const std::vector<std::string> activations(static_cast<std::size_t>(depth), nl.name);
    const nlse::Generator G =
        nlse::random_generator(dims, activations, nlse::rng::derive(seed, 1));
    const nlse::SketchMatrix A = nlse::sample_sketch(m, n, nlse::rng::derive(seed, 2));
    nlse::SamplePlan plan = nlse::default_plan(static_cast<int>(pairs), n,
                                               nlse::rng::derive(seed, 6));
    const nlse::SRECReport rep = nlse::check_srec(A, G, plan, eps1, eps2);
    out->pairs = rep.pairs;
    out->eps1 = rep.eps1;
    out->eps2 = rep.eps2;
    out->worst_slack = rep.worst_slack;
    out->pass = rep.pass ? 1 : 0;
  });
}

nlse_status nlse_run_distortion(const char* config_path, const char* out_csv_path,
                                int have_seed_override, uint64_t seed_override,
                                nlse_sweep_summary* out) {
  if (config_path == nullptr || out_csv_path == nullptr)
    return arg_error("nlse_run_distortion: null path");
  return guarded([&] {
    const nlse::Config cfg = nlse::Config::parse_file(config_path);
    const std::uint64_t seed = resolve_seed(cfg, have_seed_override, seed_override);
    const nlse::SweepSummary summary = nlse::run_distortion_sweep(cfg, seed);
    write_text_file(out_csv_path, summary.csv);
    if (out != nullptr) {
      out->cells = summary.cells;
      out->rows = summary.rows;
      out->cells_failed = summary.cells_failed;
    }
  });
}

nlse_status nlse_run_csgen(const char* config_path, const char* out_csv_path,
                           int have_seed_override, uint64_t seed_override,
                           nlse_sweep_summary* out) {
  if (config_path == nullptr || out_csv_path == nullptr)
    return arg_error("nlse_run_csgen: null path");
  return guarded([&] {
    const nlse::Config cfg = nlse::Config::parse_file(config_path);
    const std::uint64_t seed = resolve_seed(cfg, have_seed_override, seed_override);
    const nlse::SweepSummary summary = nlse::run_csgen(cfg, seed);
    write_text_file(out_csv_path, summary.csv);
    if (out != nullptr) {
      out->cells = summary.cells;
      out->rows = summary.rows;
      out->cells_failed = summary.cells_failed;
    }
  });
}

}  // extern "C"
