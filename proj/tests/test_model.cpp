#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "teamsel/model.hpp"
#include "teamsel/rng.hpp"

using namespace teamsel;

namespace {

bool close_rel(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

PredictionProfile profile_from(const std::vector<std::vector<double>>& forecasts,
                               const std::vector<double>& outcomes) {
  return PredictionProfile(Matrix::from_rows(forecasts), outcomes);
}

// Straight transcription of the definition: per round, average the members'
// forecasts and square the error. Kept free of the library's evaluation path.
double f_direct(const PredictionProfile& p, const std::vector<int>& members) {
  double acc = 0.0;
  for (std::size_t t = 0; t < p.n_rounds(); ++t) {
    double s = 0.0;
    for (int i : members) s += p.forecasts()(i, t);
    const double e = s / static_cast<double>(members.size()) - p.outcomes()[t];
    acc += e * e;
  }
  return acc;
}

PredictionProfile random_profile(teamsel::rng::SplitMix64& rng, std::size_t n,
                                 std::size_t k) {
  Matrix fc(n, k);
  std::vector<double> out(k);
  for (auto& x : out) x = rng.next_uniform(-10.0, 10.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) fc(i, t) = rng.next_uniform(-10.0, 10.0);
  return PredictionProfile(std::move(fc), std::move(out));
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("error matrix definition") {
  CHECK(build_error_matrix(profile_from({{2}}, {2})).values()(0, 0) == 0.0);

  const auto z1 = build_error_matrix(profile_from({{1, 3}}, {2, 2}));
  CHECK(z1.values()(0, 0) == -1.0);
  CHECK(z1.values()(0, 1) == 1.0);

  const auto z2 = build_error_matrix(profile_from({{1}, {3}}, {2}));
  CHECK(z2.values()(0, 0) == -1.0);
  CHECK(z2.values()(1, 0) == 1.0);
}

TEST_CASE("sse_team examples") {
  const auto p1 = profile_from({{1, 3}}, {2, 2});
  CHECK(sse_team(p1, std::vector<int>{0}) == 2.0);

  const auto p2 = profile_from({{1}, {3}}, {2});
  CHECK(sse_team(p2, std::vector<int>{0, 1}) == 0.0);

  const auto p3 = profile_from({{1, 1}, {3, 5}}, {2, 2});
  CHECK(sse_team(p3, std::vector<int>{0, 1}) == 1.0);
}

TEST_CASE("sse_team rejects bad member sets") {
  const auto p = profile_from({{1}, {3}}, {2});
  CHECK_THROWS_AS(sse_team(p, std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(sse_team(p, std::vector<int>{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sse_team(p, std::vector<int>{2}), std::invalid_argument);
  CHECK_THROWS_AS(sse_team(p, std::vector<int>{-1}), std::invalid_argument);
}

TEST_CASE("sse_weights examples") {
  const ErrorMatrix z1(Matrix::from_rows({{-1, 1}, {5, 5}}));
  CHECK(sse_weights(z1, std::vector<double>{1, 0}) == 2.0);

  const ErrorMatrix z2(Matrix::from_rows({{1, -1}, {1, 1}}));
  CHECK(sse_weights(z2, std::vector<double>{0.5, 0.5}) == 1.0);

  CHECK_THROWS_AS(sse_weights(z2, std::vector<double>{1.0}),
                  std::invalid_argument);
}

TEST_CASE("gram examples") {
  const ErrorMatrix z(Matrix::from_rows({{1, -1}, {1, 1}}));
  const auto q = build_gram(z);
  CHECK(q(0, 0) == 4.0);
  CHECK(q(0, 1) == 0.0);
  CHECK(q(1, 0) == 0.0);
  CHECK(q(1, 1) == 4.0);

  const auto q0 = build_gram(ErrorMatrix(Matrix(3, 4, 0.0)));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(q0(i, j) == 0.0);
}

TEST_CASE("team objective equals weight objective on uniform indicators") {
  auto rng = rng::derive(101, "model-identity");
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng.next_below(6);
    const std::size_t k = 1 + rng.next_below(6);
    const auto p = random_profile(rng, n, k);
    const auto z = build_error_matrix(p);

    std::vector<int> members;
    for (std::size_t i = 0; i < n; ++i)
      if (rng.next_double() < 0.5) members.push_back(static_cast<int>(i));
    if (members.empty()) members.push_back(static_cast<int>(rng.next_below(n)));

    std::vector<double> w(n, 0.0);
    for (int i : members) w[i] = 1.0 / static_cast<double>(members.size());

    const double f = sse_team(p, members);
    CHECK(close_rel(f, sse_weights(z, w)));
    CHECK(close_rel(f, f_direct(p, members)));
  }
}

TEST_CASE("weight objective equals half the quadratic form for arbitrary w") {
  auto rng = rng::derive(102, "model-quadform");
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rng.next_below(8);
    const std::size_t k = 1 + rng.next_below(8);
    const auto p = random_profile(rng, n, k);
    const auto z = build_error_matrix(p);
    const auto q = build_gram(z);
    for (int wrep = 0; wrep < 10; ++wrep) {
      std::vector<double> w(n);
      for (auto& x : w) x = rng.next_uniform(-2.0, 2.0);
      CHECK(close_rel(sse_weights(z, w), 0.5 * quadratic_form(q, w)));
    }
  }
}

TEST_CASE("gram matrices are positive semidefinite") {
  auto rng = rng::derive(103, "model-psd");
  int draws = 0;
  for (int rep = 0; rep < 50 || draws < 1000; ++rep) {
    const std::size_t n = 1 + rng.next_below(8);
    const std::size_t k = 1 + rng.next_below(8);
    const auto q = build_gram(build_error_matrix(random_profile(rng, n, k)));
    const double scale = q.inf_norm();
    for (int wrep = 0; wrep < 25; ++wrep, ++draws) {
      std::vector<double> u(n);
      double norm2 = 0.0;
      for (auto& x : u) {
        x = rng.next_uniform(-1.0, 1.0);
        norm2 += x * x;
      }
      CHECK(quadratic_form(q, u) >= -1e-9 * norm2 * scale);
    }
  }
}

TEST_CASE("sse_team is invariant to member order and consistent relabeling") {
  auto rng = rng::derive(104, "model-perm");
  const auto p = random_profile(rng, 6, 5);
  const std::vector<int> members{0, 2, 5};
  std::vector<int> shuffled{5, 0, 2};
  CHECK(sse_team(p, members) == sse_team(p, shuffled));

  // Relabel experts by a permutation; the permuted member set must score
  // identically on the permuted profile.
  const std::vector<int> perm{3, 0, 4, 1, 5, 2};  // new index of old expert i
  Matrix fc(6, 5);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t t = 0; t < 5; ++t) fc(perm[i], t) = p.forecasts()(i, t);
  const PredictionProfile relabeled(std::move(fc), p.outcomes());
  std::vector<int> mapped;
  for (int i : members) mapped.push_back(perm[i]);
  CHECK(sse_team(p, members) ==
        doctest::Approx(sse_team(relabeled, mapped)).epsilon(1e-12));
}

TEST_CASE("construction rejects non-finite input") {
  CHECK_THROWS_AS(
      profile_from({{1.0, std::numeric_limits<double>::quiet_NaN()}}, {0, 0}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      profile_from({{1.0, 2.0}}, {0, std::numeric_limits<double>::infinity()}),
      std::invalid_argument);
  CHECK_THROWS_AS(profile_from({{1.0, 2.0}}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(WeightVector({0.5, -0.5}), std::invalid_argument);
  CHECK_THROWS_AS(WeightVector({0.5, 0.4}), std::invalid_argument);
}

TEST_CASE("make_team sorts members and records f") {
  const auto p = profile_from({{1, 1}, {3, 5}, {0, 0}}, {2, 2});
  const Team t = make_team(p, {1, 0});
  CHECK(t.members == std::vector<int>{0, 1});
  CHECK(t.sse == 1.0);
}

}  // TEST_SUITE
