#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "nlse.h"

TEST_SUITE("capi") {

TEST_CASE("version and catalog enumeration") {
  CHECK(std::strlen(nlse_version()) > 0);
  const int count = nlse_catalog_count();
  CHECK(count == 9);
  bool saw_tanh = false;
  for (int i = 0; i < count; ++i) {
    const char* name = nlse_catalog_name(i);
    REQUIRE(name != nullptr);
    saw_tanh = saw_tanh || std::string(name) == "tanh";
  }
  CHECK(saw_tanh);
  CHECK(nlse_catalog_name(-1) == nullptr);
  CHECK(nlse_catalog_name(count) == nullptr);
}

TEST_CASE("fixture info and error reporting") {
  nlse_fixture_info info{};
  REQUIRE(nlse_fixture_get("tanh", &info) == NLSE_OK);
  CHECK(info.a == doctest::Approx(4.0 / (3.0 * std::sqrt(3.0))));
  CHECK(info.b == 1.0);
  CHECK(info.c == 1.0);
  CHECK(info.has_g == 1);
  CHECK(info.g1 == 0.5);
  CHECK(info.bounded == 1);
  CHECK(info.bound == 1.0);
  CHECK(info.affine == 0);

  CHECK(nlse_fixture_get("nope", &info) == NLSE_E_NOT_FOUND);
  CHECK(std::strlen(nlse_last_error()) > 0);
  CHECK(nlse_fixture_get(nullptr, &info) == NLSE_E_INVALID_ARGUMENT);
  CHECK(nlse_fixture_get("tanh", nullptr) == NLSE_E_INVALID_ARGUMENT);

  // A successful call clears the sticky message.
  REQUIRE(nlse_fixture_get("tanh", &info) == NLSE_OK);
  CHECK(std::strlen(nlse_last_error()) == 0);
}

TEST_CASE("verify_condition round-trips results") {
  nlse_cert_result r{};
  REQUIRE(nlse_verify_condition("sigmoid", 1, 0.0, &r) == NLSE_OK);
  CHECK(r.condition == 1);
  CHECK(r.pass == 1);
  CHECK(r.observed == doctest::Approx(1.0 / (6.0 * std::sqrt(3.0))).epsilon(1e-6));

  REQUIRE(nlse_verify_condition("sigmoid", 2, 0.25, &r) == NLSE_OK);
  CHECK(r.eps == 0.25);
  CHECK(r.pass == 1);

  CHECK(nlse_verify_condition("sigmoid", 3, 0.0, &r) != NLSE_OK);  // no inverse claim
  CHECK(nlse_verify_condition("sigmoid", 9, 0.0, &r) == NLSE_E_INVALID_ARGUMENT);
}

TEST_CASE("pwl handle lifecycle") {
  nlse_pwl* pwl = nullptr;
  REQUIRE(nlse_pwl_build("gaussian", 0.125, &pwl) == NLSE_OK);
  REQUIRE(pwl != nullptr);
  CHECK(nlse_pwl_piece_count(pwl) == 25);
  CHECK(nlse_pwl_breakpoint_count(pwl) == 24);

  std::vector<double> bp(24), slope(25), intercept(25);
  REQUIRE(nlse_pwl_knots(pwl, bp.data(), slope.data(), intercept.data()) == NLSE_OK);
  CHECK(bp.front() == -8.0);
  CHECK(bp.back() == 8.0);
  // Evaluation agrees with the piece parameters away from the edges.
  const double x = 0.5 * (bp[3] + bp[4]);
  CHECK(nlse_pwl_eval(pwl, x) == doctest::Approx(slope[4] * x + intercept[4]).epsilon(1e-12));

  double err = 0.0;
  REQUIRE(nlse_pwl_uniform_error(pwl, 16.0, 0.03, &err) == NLSE_OK);
  CHECK(err <= 0.125 * (1.0 + 1e-9));

  nlse_pwl_free(pwl);

  nlse_pwl* bad = nullptr;
  CHECK(nlse_pwl_build("gaussian", 7.0, &bad) == NLSE_E_PRECONDITION);
  CHECK(bad == nullptr);
  CHECK(nlse_pwl_build("ghost", 0.1, &bad) == NLSE_E_NOT_FOUND);
  nlse_pwl_free(nullptr);  // must be a no-op
}

TEST_CASE("required_dim matches the core formula") {
  int m = 0, clamped = -1;
  REQUIRE(nlse_required_dim("additive", 4, 256, 1, 0.5, 0.1, 0.1, 0.1, 1.0, &m, &clamped) ==
          NLSE_OK);
  CHECK(m == 135);
  CHECK(clamped == 0);

  REQUIRE(nlse_required_dim("relative", 4, 256, 1, 0.1, 0.1, 0.25, 0.05, 1.0, &m, &clamped) ==
          NLSE_OK);
  CHECK(m == 256);
  CHECK(clamped == 1);

  CHECK(nlse_required_dim("bogus", 4, 256, 1, 0.5, 0.1, 0.1, 0.1, 1.0, &m, &clamped) ==
        NLSE_E_INVALID_ARGUMENT);
  CHECK(nlse_required_dim("additive", 0, 256, 1, 0.5, 0.1, 0.1, 0.1, 1.0, &m, &clamped) ==
        NLSE_E_INVALID_ARGUMENT);
}

TEST_CASE("sketch handle apply and spectral norm") {
  nlse_sketch* s = nullptr;
  REQUIRE(nlse_sketch_sample(4, 6, 99, &s) == NLSE_OK);
  int m = 0, n = 0;
  REQUIRE(nlse_sketch_dims(s, &m, &n) == NLSE_OK);
  CHECK(m == 4);
  CHECK(n == 6);

  const std::vector<double> x(6, 0.0);
  std::vector<double> y(4, 1.0);
  REQUIRE(nlse_sketch_apply(s, x.data(), 6, y.data(), 4) == NLSE_OK);
  for (double v : y) CHECK(v == 0.0);
  CHECK(nlse_sketch_apply(s, x.data(), 5, y.data(), 4) == NLSE_E_DIMENSION_MISMATCH);

  double sn = 0.0;
  REQUIRE(nlse_sketch_spectral_norm(s, 100, &sn) == NLSE_OK);
  CHECK(sn > 0.0);
  CHECK(nlse_sketch_spectral_norm(s, 5, &sn) == NLSE_E_PRECONDITION);
  nlse_sketch_free(s);
  nlse_sketch_free(nullptr);
}

TEST_CASE("region census one-shot") {
  nlse_region_census c{};
  REQUIRE(nlse_region_census_run("sqnl", 0.5, 1, 5, "exact_1d", 0, 7, &c) == NLSE_OK);
  CHECK(c.k == 1);
  CHECK(c.n == 5);
  CHECK(c.t >= 2);
  CHECK(c.distinct_patterns >= 2);
  CHECK(double(c.distinct_patterns) <= c.bound);
  CHECK(nlse_region_census_run("sqnl", 0.5, 1, 5, "bogus", 0, 7, &c) ==
        NLSE_E_INVALID_ARGUMENT);
}

TEST_CASE("srec one-shot") {
  nlse_srec_report rep{};
  REQUIRE(nlse_srec_check("sigmoid", 3, 32, 32, 2, 32, 200, 0.5, 0.1, 5, &rep) == NLSE_OK);
  CHECK(rep.pairs == 200);
  CHECK(rep.eps1 == 0.5);
  CHECK(rep.eps2 == 0.1);
  CHECK(std::isfinite(rep.worst_slack));
}

TEST_CASE("sweep drivers run through the C surface") {
  const char* cfg_path = "capi_smoke.cfg";
  {
    std::ofstream out(cfg_path, std::ios::trunc);
    out << "fixture = tanh\nmode = relative\nk = 2\nn = 32\neps = 0.3\n"
        << "trials = 3\nsamples = 100\nbase_seed = 4\n";
  }
  nlse_sweep_summary sum{};
  REQUIRE(nlse_run_distortion(cfg_path, "capi_smoke_out.csv", 0, 0, &sum) == NLSE_OK);
  CHECK(sum.cells == 1);
  CHECK(sum.rows == 3);

  // Seed override must change the in-file echo.
  REQUIRE(nlse_run_distortion(cfg_path, "capi_smoke_out2.csv", 1, 777, &sum) == NLSE_OK);
  std::ifstream in("capi_smoke_out2.csv");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("base_seed=777") != std::string::npos);

  CHECK(nlse_run_distortion("no_such.cfg", "x.csv", 0, 0, &sum) == NLSE_E_IO);
  CHECK(nlse_run_distortion(cfg_path, "/nonexistent-dir/x.csv", 0, 0, &sum) == NLSE_E_IO);
  std::remove(cfg_path);
  std::remove("capi_smoke_out.csv");
  std::remove("capi_smoke_out2.csv");
}

}  // TEST_SUITE
