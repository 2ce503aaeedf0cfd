#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "teamsel/rng.hpp"

using teamsel::rng::derive;
using teamsel::rng::SplitMix64;

TEST_SUITE("rng") {

TEST_CASE("streams are reproducible and distinct") {
  auto a = derive(1, "tag", 0);
  auto b = derive(1, "tag", 0);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  CHECK(derive(1, "tag", 0).next_u64() != derive(1, "tag", 1).next_u64());
  CHECK(derive(1, "tag", 0).next_u64() != derive(1, "other", 0).next_u64());
  CHECK(derive(1, "tag", 0).next_u64() != derive(2, "tag", 0).next_u64());
}

TEST_CASE("next_below stays in range and covers small supports") {
  auto rng = derive(7, "below");
  std::vector<int> seen(5, 0);
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.next_below(5);
    REQUIRE(v < 5);
    ++seen[v];
  }
  for (int c : seen) CHECK(c > 200);
}

TEST_CASE("uniform moments") {
  auto rng = derive(11, "uniform");
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_double();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("normal moments") {
  auto rng = derive(13, "normal");
  const int n = 40000;
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.next_normal(10.0, 2.0);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean - 10.0) < 0.05);
  CHECK(std::abs(std::sqrt(var) - 2.0) < 0.05);
}

TEST_CASE("exponential is positive with the right mean") {
  auto rng = derive(17, "exp");
  const int n = 40000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.next_exponential(10.0);
    REQUIRE(x > 0.0);
    sum += x;
  }
  CHECK(std::abs(sum / n - 10.0) < 0.3);
}

}  // TEST_SUITE
