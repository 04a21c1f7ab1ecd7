#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "rng.hpp"

using namespace nlse;

TEST_SUITE("rng") {

// The word stream is part of the output contract: changing the scheme would
// silently change every seeded experiment.  These anchors pin it.
TEST_CASE("frozen reference words") {
  CHECK(rng::word_at(1, 0) == 10451216379200822465ULL);
  CHECK(rng::word_at(1, 1) == 13757245211066428519ULL);
  CHECK(rng::word_at(1, 2) == 17911839290282890590ULL);
  CHECK(rng::word_at(1, 3) == 8196980753821780235ULL);
  CHECK(rng::derive(1, 7) == 4414019431610648415ULL);
  CHECK(rng::gaussian(42, 0) == doctest::Approx(0.41471975043153003).epsilon(1e-15));
  CHECK(rng::gaussian(42, 1) == doctest::Approx(-0.89188621362775733).epsilon(1e-15));
  CHECK(rng::uniform01(9, 3) == doctest::Approx(0.78481369246509802).epsilon(1e-15));
}

TEST_CASE("words are counter-addressable and order-independent") {
  const std::uint64_t a = rng::word_at(123, 1000);
  for (std::uint64_t c = 0; c < 5; ++c) (void)rng::word_at(123, c);
  CHECK(rng::word_at(123, 1000) == a);  // stateless: no hidden stream position
  CHECK(rng::word_at(123, 0) != rng::word_at(123, 1));
  CHECK(rng::word_at(123, 0) != rng::word_at(124, 0));
}

TEST_CASE("derive separates child streams") {
  CHECK(rng::derive(5, 0) != rng::derive(5, 1));
  CHECK(rng::derive(5, 0) != rng::derive(6, 0));
  // A derived stream must not alias its parent's early words.
  const std::uint64_t child = rng::derive(5, 0);
  for (std::uint64_t c = 0; c < 100; ++c) CHECK(rng::word_at(child, c) != rng::word_at(5, c));
}

TEST_CASE("uniform01 lands in (0, 1]") {
  double lo = 2.0, hi = -1.0;
  for (std::uint64_t c = 0; c < 100000; ++c) {
    const double u = rng::uniform01(77, c);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
  }
  CHECK(lo < 1e-4);  // the stream actually explores the low end
  CHECK(hi > 0.9999);
}

TEST_CASE("gaussian moments") {
  const int N = 200000;
  double sum = 0.0, sumsq = 0.0, sum4 = 0.0;
  for (int c = 0; c < N; ++c) {
    const double g = rng::gaussian(2024, static_cast<std::uint64_t>(c));
    sum += g;
    sumsq += g * g;
    sum4 += g * g * g * g;
  }
  const double mean = sum / N;
  const double var = sumsq / N - mean * mean;
  const double kurt = sum4 / N / (var * var);
  CHECK(std::fabs(mean) < 0.01);
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
  CHECK(kurt == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("gaussian counters never reuse words") {
  // gaussian(c) consumes words 2c and 2c+1, so adjacent draws differ and the
  // pair (seed, c) fully determines the value.
  CHECK(rng::gaussian(3, 10) == rng::gaussian(3, 10));
  CHECK(rng::gaussian(3, 10) != rng::gaussian(3, 11));
}

TEST_CASE("fill_gaussian matches per-index draws") {
  std::vector<double> buf(64);
  rng::fill_gaussian(buf, 99, 5);
  for (std::size_t i = 0; i < buf.size(); ++i)
    CHECK(buf[i] == rng::gaussian(99, 5 + static_cast<std::uint64_t>(i)));
}

}  // TEST_SUITE
