// nlse command-line interface.  Every operation goes through the public C API
// (include/nlse.h); this translation unit never touches the core C++ headers.
//
// Exit codes: 0 = success / all checks passed, 1 = a check or run failed,
// 2 = usage error (bad flags, unknown fixture, malformed config value).

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nlse.h"

namespace {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

// Maps a failed library status to the CLI exit contract: caller mistakes are
// usage errors (2), everything else is a run failure (1).
int report_failure(nlse_status st) {
  std::fprintf(stderr, "error: %s\n", nlse_last_error());
  switch (st) {
    case NLSE_E_INVALID_ARGUMENT:
    case NLSE_E_PRECONDITION:
    case NLSE_E_NOT_FOUND:
      return 2;
    default:
      return 1;
  }
}

// NLSE_SEED env var overrides the base seed of any seeded command.
// Returns 0 = unset, 1 = parsed into *seed, -1 = malformed.
int seed_from_env(std::uint64_t* seed) {
  const char* raw = std::getenv("NLSE_SEED");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (errno != 0 || end == raw || *end != '\0') {
    std::fprintf(stderr, "error: NLSE_SEED is not an unsigned integer: '%s'\n", raw);
    return -1;
  }
  *seed = static_cast<std::uint64_t>(v);
  return 1;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.good()) return false;
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  return out.good();
}

json cert_to_json(const std::string& fixture, const nlse_cert_result& r) {
  json rec;
  rec["fixture"] = fixture;
  rec["condition"] = r.condition;
  if (std::isnan(r.eps))
    rec["eps"] = nullptr;
  else
    rec["eps"] = r.eps;
  rec["claimed"] = r.claimed;
  rec["observed"] = r.observed;
  rec["argmax"] = r.argmax;
  rec["pass"] = (r.pass != 0);
  return rec;
}

int run_catalog_verify(const std::string& fixture, const std::vector<double>& eps_list,
                       const std::string& out_path) {
  std::vector<std::string> names;
  if (fixture == "all") {
    const int count = nlse_catalog_count();
    for (int i = 0; i < count; ++i) names.emplace_back(nlse_catalog_name(i));
  } else {
    names.push_back(fixture);
  }

  json report = json::array();
  bool all_pass = true;
  for (const std::string& name : names) {
    nlse_fixture_info info{};
    if (nlse_status st = nlse_fixture_get(name.c_str(), &info); st != NLSE_OK)
      return report_failure(st);

    nlse_cert_result r{};
    if (nlse_status st = nlse_verify_condition(name.c_str(), 1, 0.0, &r); st != NLSE_OK)
      return report_failure(st);
    all_pass = all_pass && r.pass;
    report.push_back(cert_to_json(name, r));

    for (const double eps : eps_list) {
      if (nlse_status st = nlse_verify_condition(name.c_str(), 2, eps, &r); st != NLSE_OK)
        return report_failure(st);
      all_pass = all_pass && r.pass;
      report.push_back(cert_to_json(name, r));
    }

    if (info.has_g) {
      if (nlse_status st = nlse_verify_condition(name.c_str(), 3, 0.0, &r); st != NLSE_OK)
        return report_failure(st);
      all_pass = all_pass && r.pass;
      report.push_back(cert_to_json(name, r));
    }
  }

  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else if (!write_file(out_path, text)) {
    std::fprintf(stderr, "error: cannot write '%s'\n", out_path.c_str());
    return 1;
  }
  return all_pass ? 0 : 1;
}

int run_pwl_build(const std::string& fixture, double eps, const std::string& dump_path) {
  nlse_pwl* pwl = nullptr;
  if (nlse_status st = nlse_pwl_build(fixture.c_str(), eps, &pwl); st != NLSE_OK)
    return report_failure(st);

  const size_t pieces = nlse_pwl_piece_count(pwl);
  const size_t knots = nlse_pwl_breakpoint_count(pwl);
  std::vector<double> bp(knots), slope(pieces), intercept(pieces);
  if (nlse_status st = nlse_pwl_knots(pwl, bp.data(), slope.data(), intercept.data());
      st != NLSE_OK) {
    nlse_pwl_free(pwl);
    return report_failure(st);
  }

  if (!dump_path.empty()) {
    // One row per knot: position, interpolated value, and the parameters of
    // the piece starting at that knot (the last row carries the right ray).
    std::string csv = "index,t,f_t,slope,intercept\n";
    for (size_t i = 0; i < knots; ++i) {
      csv += std::to_string(i);
      csv += ',';
      csv += format_double(bp[i]);
      csv += ',';
      csv += format_double(nlse_pwl_eval(pwl, bp[i]));
      csv += ',';
      csv += format_double(slope[i + 1]);
      csv += ',';
      csv += format_double(intercept[i + 1]);
      csv += '\n';
    }
    if (!write_file(dump_path, csv)) {
      std::fprintf(stderr, "error: cannot write '%s'\n", dump_path.c_str());
      nlse_pwl_free(pwl);
      return 1;
    }
  }

  json summary;
  summary["fixture"] = fixture;
  summary["eps"] = eps;
  summary["pieces"] = pieces;
  summary["knots"] = knots;
  std::fputs((summary.dump(2) + "\n").c_str(), stdout);
  nlse_pwl_free(pwl);
  return 0;
}

int run_pwl_certify(const std::string& fixture, double eps) {
  nlse_fixture_info info{};
  if (nlse_status st = nlse_fixture_get(fixture.c_str(), &info); st != NLSE_OK)
    return report_failure(st);

  nlse_pwl* pwl = nullptr;
  if (nlse_status st = nlse_pwl_build(fixture.c_str(), eps, &pwl); st != NLSE_OK)
    return report_failure(st);

  const double half_width = 2.0 * info.c / std::pow(eps, info.b);
  const double gamma = std::sqrt(8.0 / info.a) * std::sqrt(eps);
  const double spacing = gamma / 20.0;
  double err = 0.0;
  if (nlse_status st = nlse_pwl_uniform_error(pwl, half_width, spacing, &err); st != NLSE_OK) {
    nlse_pwl_free(pwl);
    return report_failure(st);
  }
  const size_t pieces = nlse_pwl_piece_count(pwl);
  nlse_pwl_free(pwl);

  // Guard band absorbs double rounding when the true error sits exactly on
  // the target (piece boundaries of kink fixtures attain eps to the bit).
  const bool pass = err <= eps * (1.0 + 1e-9) + 1e-12;
  std::printf("max_error=%s\n", format_double(err).c_str());
  std::printf("pieces=%zu\n", pieces);
  std::printf("pass=%d\n", pass ? 1 : 0);
  return pass ? 0 : 1;
}

int run_sketch_dims(const std::string& mode, int k, int n, int t, double eps1, double eps2,
                    double eps, double delta, double C) {
  int m = 0;
  int clamped = 0;
  if (nlse_status st =
          nlse_required_dim(mode.c_str(), k, n, t, eps1, eps2, eps, delta, C, &m, &clamped);
      st != NLSE_OK)
    return report_failure(st);
  std::printf("%d\n", m);
  std::printf("clamped=%d\n", clamped);
  return 0;
}

int run_sweep(bool csgen, const std::string& config_path, const std::string& out_path) {
  std::uint64_t seed = 0;
  const int have = seed_from_env(&seed);
  if (have < 0) return 2;

  nlse_sweep_summary summary{};
  const nlse_status st =
      csgen ? nlse_run_csgen(config_path.c_str(), out_path.c_str(), have, seed, &summary)
            : nlse_run_distortion(config_path.c_str(), out_path.c_str(), have, seed, &summary);
  if (st != NLSE_OK) return report_failure(st);

  std::printf("cells=%lld\n", static_cast<long long>(summary.cells));
  std::printf("rows=%lld\n", static_cast<long long>(summary.rows));
  std::printf("cells_failed=%lld\n", static_cast<long long>(summary.cells_failed));
  return summary.cells_failed > 0 ? 1 : 0;
}

int run_regions_census(const std::string& fixture, double eps, int k, int n,
                       const std::string& method, long long budget, std::uint64_t seed) {
  std::uint64_t env_seed = 0;
  const int have = seed_from_env(&env_seed);
  if (have < 0) return 2;
  if (have > 0) seed = env_seed;

  nlse_region_census out{};
  if (nlse_status st =
          nlse_region_census_run(fixture.c_str(), eps, k, n, method.c_str(), budget, seed, &out);
      st != NLSE_OK)
    return report_failure(st);

  json rec;
  rec["fixture"] = fixture;
  rec["method"] = method;
  rec["k"] = out.k;
  rec["n"] = out.n;
  rec["t"] = out.t;
  rec["distinct_patterns"] = out.distinct_patterns;
  rec["bound"] = out.bound;
  rec["samples_used"] = out.samples_used;
  rec["degenerate"] = (out.degenerate != 0);
  rec["perturbed"] = out.perturbed;
  rec["seed"] = seed;
  std::fputs((rec.dump(2) + "\n").c_str(), stdout);
  return 0;
}

int run_csgen_srec(const std::string& fixture, int k, int n, int hidden, int depth, int m,
                   long long pairs, double eps1, double eps2, std::uint64_t seed) {
  std::uint64_t env_seed = 0;
  const int have = seed_from_env(&env_seed);
  if (have < 0) return 2;
  if (have > 0) seed = env_seed;
  if (hidden <= 0) hidden = n;

  nlse_srec_report out{};
  if (nlse_status st = nlse_srec_check(fixture.c_str(), k, n, hidden, depth, m, pairs, eps1,
                                       eps2, seed, &out);
      st != NLSE_OK)
    return report_failure(st);

  json rec;
  rec["fixture"] = fixture;
  rec["k"] = k;
  rec["n"] = n;
  rec["hidden"] = hidden;
  rec["depth"] = depth;
  rec["m"] = m;
  rec["pairs"] = out.pairs;
  rec["eps1"] = out.eps1;
  rec["eps2"] = out.eps2;
  rec["worst_slack"] = out.worst_slack;
  rec["pass"] = (out.pass != 0);
  rec["seed"] = seed;
  std::fputs((rec.dump(2) + "\n").c_str(), stdout);
  return out.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlse: low-distortion sketching of nonlinearly transformed subspaces"};
  app.require_subcommand(1);
  app.footer("Seeded commands honor the NLSE_SEED environment variable, which overrides\n"
             "any configured or flag-supplied base seed.");

  int exit_code = 0;

  // --- catalog verify ------------------------------------------------------
  auto* catalog_cmd = app.add_subcommand("catalog", "Nonlinearity catalog operations");
  catalog_cmd->require_subcommand(1);
  auto* cat_verify = catalog_cmd->add_subcommand(
      "verify", "Check the regularity conditions of catalog fixtures");
  std::string cat_fixture = "all";
  std::vector<double> cat_eps{0.5, 0.25, 0.1};
  std::string cat_out;
  cat_verify->add_option("--fixture", cat_fixture, "Fixture name, or 'all'")
      ->capture_default_str();
  cat_verify->add_option("--eps", cat_eps, "Asymptote-condition eps values")
      ->capture_default_str();
  cat_verify->add_option("--out", cat_out, "Write the JSON report here instead of stdout");
  cat_verify->callback(
      [&] { exit_code = run_catalog_verify(cat_fixture, cat_eps, cat_out); });

  // --- pwl build / certify -------------------------------------------------
  auto* pwl_cmd = app.add_subcommand("pwl", "Piecewise-linear approximation operations");
  pwl_cmd->require_subcommand(1);

  auto* pwl_build = pwl_cmd->add_subcommand("build", "Build an approximation, print a summary");
  std::string pb_fixture;
  double pb_eps = 0.1;
  std::string pb_dump;
  pwl_build->add_option("--fixture", pb_fixture, "Fixture name")->required();
  pwl_build->add_option("--eps", pb_eps, "Target uniform error in (0, 1]")->required();
  pwl_build->add_option("--dump", pb_dump, "Write knots CSV (index,t,f_t,slope,intercept)");
  pwl_build->callback([&] { exit_code = run_pwl_build(pb_fixture, pb_eps, pb_dump); });

  auto* pwl_certify =
      pwl_cmd->add_subcommand("certify", "Measure the uniform error of the approximation");
  std::string pc_fixture;
  double pc_eps = 0.1;
  pwl_certify->add_option("--fixture", pc_fixture, "Fixture name")->required();
  pwl_certify->add_option("--eps", pc_eps, "Target uniform error in (0, 1]")->required();
  pwl_certify->callback([&] { exit_code = run_pwl_certify(pc_fixture, pc_eps); });

  // --- sketch dims ----------------------------------------------------------
  auto* sketch_cmd = app.add_subcommand("sketch", "Gaussian sketch operations");
  sketch_cmd->require_subcommand(1);
  auto* sk_dims =
      sketch_cmd->add_subcommand("dims", "Print the required embedding dimension m");
  std::string sd_mode;
  int sd_k = 1, sd_n = 1, sd_t = 1;
  double sd_eps1 = 0.1, sd_eps2 = 0.1, sd_eps = 0.1, sd_delta = 0.1, sd_C = 1.0;
  sk_dims->add_option("--mode", sd_mode, "additive | piecewise | relative | srec")->required();
  sk_dims->add_option("--k", sd_k, "Subspace dimension")->required();
  sk_dims->add_option("--n", sd_n, "Ambient dimension")->required();
  sk_dims->add_option("--t", sd_t, "Piece count (piecewise mode)")->capture_default_str();
  sk_dims->add_option("--eps1", sd_eps1, "Multiplicative error (additive/srec)")
      ->capture_default_str();
  sk_dims->add_option("--eps2", sd_eps2, "Additive error (additive/srec)")
      ->capture_default_str();
  sk_dims->add_option("--eps", sd_eps, "Distortion target (piecewise/relative)")
      ->capture_default_str();
  sk_dims->add_option("--delta", sd_delta, "Failure probability")->capture_default_str();
  sk_dims->add_option("--C", sd_C, "Leading constant")->capture_default_str();
  sk_dims->callback([&] {
    exit_code =
        run_sketch_dims(sd_mode, sd_k, sd_n, sd_t, sd_eps1, sd_eps2, sd_eps, sd_delta, sd_C);
  });

  // --- distortion run -------------------------------------------------------
  auto* dist_cmd = app.add_subcommand("distortion", "Distortion measurement sweeps");
  dist_cmd->require_subcommand(1);
  auto* dist_run = dist_cmd->add_subcommand("run", "Run a config-driven sweep, write CSV");
  std::string dr_config, dr_out;
  dist_run->add_option("--config", dr_config, "Sweep config file")->required();
  dist_run->add_option("--out", dr_out, "Output CSV path")->required();
  dist_run->callback([&] { exit_code = run_sweep(false, dr_config, dr_out); });

  // --- regions census -------------------------------------------------------
  auto* regions_cmd = app.add_subcommand("regions", "Linear-region census");
  regions_cmd->require_subcommand(1);
  auto* reg_census = regions_cmd->add_subcommand("census", "Count activation patterns");
  std::string rc_fixture, rc_method = "sign_sample";
  double rc_eps = 0.1;
  int rc_k = 1, rc_n = 4;
  long long rc_budget = 10000;
  std::uint64_t rc_seed = 1;
  reg_census->add_option("--fixture", rc_fixture, "Fixture name")->required();
  reg_census->add_option("--eps", rc_eps, "PWL target eps")->capture_default_str();
  reg_census->add_option("--k", rc_k, "Subspace dimension")->capture_default_str();
  reg_census->add_option("--n", rc_n, "Ambient dimension")->capture_default_str();
  reg_census->add_option("--method", rc_method, "exact_1d | sign_sample")
      ->capture_default_str();
  reg_census->add_option("--budget", rc_budget, "Sample budget (sign_sample)")
      ->capture_default_str();
  reg_census->add_option("--seed", rc_seed, "Base seed")->capture_default_str();
  reg_census->callback([&] {
    exit_code = run_regions_census(rc_fixture, rc_eps, rc_k, rc_n, rc_method, rc_budget, rc_seed);
  });

  // --- csgen run / srec ------------------------------------------------------
  auto* csgen_cmd = app.add_subcommand("csgen", "Compressed sensing with a generative prior");
  csgen_cmd->require_subcommand(1);

  auto* cs_run = csgen_cmd->add_subcommand("run", "Run a config-driven recovery experiment");
  std::string cs_config, cs_out;
  cs_run->add_option("--config", cs_config, "Experiment config file")->required();
  cs_run->add_option("--out", cs_out, "Output CSV path")->required();
  cs_run->callback([&] { exit_code = run_sweep(true, cs_config, cs_out); });

  auto* cs_srec = csgen_cmd->add_subcommand(
      "srec", "Check the set-restricted eigenvalue condition on sampled pairs");
  std::string sr_fixture = "sigmoid";
  int sr_k = 4, sr_n = 128, sr_hidden = 0, sr_depth = 2, sr_m = 128;
  long long sr_pairs = 10000;
  double sr_eps1 = 0.5, sr_eps2 = 0.1;
  std::uint64_t sr_seed = 1;
  cs_srec->add_option("--fixture", sr_fixture, "Generator activation")->capture_default_str();
  cs_srec->add_option("--k", sr_k, "Latent dimension")->capture_default_str();
  cs_srec->add_option("--n", sr_n, "Output dimension")->capture_default_str();
  cs_srec->add_option("--hidden", sr_hidden, "Hidden width (default: n)");
  cs_srec->add_option("--depth", sr_depth, "Layer count")->capture_default_str();
  cs_srec->add_option("--m", sr_m, "Sketch rows")->capture_default_str();
  cs_srec->add_option("--pairs", sr_pairs, "Sampled pairs")->capture_default_str();
  cs_srec->add_option("--eps1", sr_eps1, "Multiplicative slack")->capture_default_str();
  cs_srec->add_option("--eps2", sr_eps2, "Additive slack")->capture_default_str();
  cs_srec->add_option("--seed", sr_seed, "Base seed")->capture_default_str();
  cs_srec->callback([&] {
    exit_code = run_csgen_srec(sr_fixture, sr_k, sr_n, sr_hidden, sr_depth, sr_m, sr_pairs,
                               sr_eps1, sr_eps2, sr_seed);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return exit_code;
}
