#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "teamsel/heuristics.hpp"
#include "teamsel/rng.hpp"
#include "teamsel/tabu.hpp"

using namespace teamsel;
using tabu::ExitReason;
using tabu::TabuParams;
using tabu::TabuTrace;

namespace {

PredictionProfile profile_from_errors(const std::vector<std::vector<double>>& z) {
  const auto m = Matrix::from_rows(z);
  return PredictionProfile(m, std::vector<double>(m.cols(), 0.0));
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

// Greedy steepest descent over swaps by brute force, the reference for the
// escape_prob = 0 behavior. Ties to the lowest (u, then v).
std::vector<double> steepest_descent_trajectory(const PredictionProfile& p,
                                                std::vector<int> members) {
  const std::size_t n = p.n_experts();
  std::vector<double> traj{f_direct(p, members)};
  for (;;) {
    double best_f = traj.back();
    int best_u = -1;
    int best_v = -1;
    std::sort(members.begin(), members.end());
    for (int u : members) {
      for (std::size_t v = 0; v < n; ++v) {
        if (std::find(members.begin(), members.end(), static_cast<int>(v)) !=
            members.end())
          continue;
        auto cand = members;
        *std::find(cand.begin(), cand.end(), u) = static_cast<int>(v);
        const double f = f_direct(p, cand);
        if (f < best_f) {
          best_f = f;
          best_u = u;
          best_v = static_cast<int>(v);
        }
      }
    }
    if (best_u < 0) return traj;
    *std::find(members.begin(), members.end(), best_u) = best_v;
    traj.push_back(best_f);
  }
}

}  // namespace

TEST_SUITE("tabu") {

TEST_CASE("exactly cancelling pair ends at the lower bound") {
  const auto p = profile_from_errors({{1, -1}, {-1, 1}, {9, 9}});
  TabuTrace trace;
  const Team t = tabu::tabu_search(p, 2, TabuParams{}, &trace);
  CHECK(t.members == std::vector<int>{0, 1});
  CHECK(t.sse == 0.0);
  CHECK(trace.exit == ExitReason::lower_bound);
}

TEST_CASE("m equal to n returns the full team without searching") {
  auto rng = rng::derive(31, "tabu-full");
  const auto p = random_profile(rng, 3, 4);
  TabuTrace trace;
  const Team t = tabu::tabu_search(p, 3, TabuParams{}, &trace);
  CHECK(t.members == std::vector<int>{0, 1, 2});
  CHECK(trace.exit == ExitReason::single_team);
  CHECK(trace.rows.empty());
}

TEST_CASE("m out of range") {
  auto rng = rng::derive(32, "tabu-range");
  const auto p = random_profile(rng, 3, 4);
  CHECK_THROWS_AS(tabu::tabu_search(p, 0, TabuParams{}), std::invalid_argument);
  CHECK_THROWS_AS(tabu::tabu_search(p, 4, TabuParams{}), std::invalid_argument);
}

TEST_CASE("best_swap single option") {
  const auto p = profile_from_errors({{5}, {0}});
  const auto z = build_error_matrix(p);
  const auto q = build_gram(z);
  const std::vector<std::size_t> never(2, 0);
  const auto c = tabu::best_swap(z, q, std::vector<int>{0}, never, never, 1,
                                 1e300);
  REQUIRE(c.found);
  CHECK(c.out == 0);
  CHECK(c.in == 1);
  CHECK(c.delta == doctest::Approx(-25.0).epsilon(1e-12));
}

TEST_CASE("best_swap delta matches a from-scratch recompute") {
  auto rng = rng::derive(33, "tabu-delta");
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 3 + rng.next_below(6);
    const std::size_t k = 1 + rng.next_below(8);
    const std::size_t m = 1 + rng.next_below(n - 1);
    const auto p = random_profile(rng, n, k);
    const auto z = build_error_matrix(p);
    const auto q = build_gram(z);

    std::vector<int> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<int>(i);
    for (std::size_t i = 0; i < m; ++i)
      std::swap(pool[i], pool[i + rng.next_below(n - i)]);
    std::vector<int> members(pool.begin(), pool.begin() + m);

    const std::vector<std::size_t> never(n, 0);
    const auto c =
        tabu::best_swap(z, q, members, never, never, 1, 1e300);
    REQUIRE(c.found);

    const double before = f_direct(p, members);
    auto after = members;
    *std::find(after.begin(), after.end(), c.out) = c.in;
    const double f_after = f_direct(p, after);
    CHECK(std::abs(before + c.delta - f_after) <=
          1e-9 * std::max({1.0, before, f_after}));

    // It really is the minimum over all swaps.
    for (int u : members) {
      for (std::size_t v = 0; v < n; ++v) {
        if (std::find(members.begin(), members.end(), static_cast<int>(v)) !=
            members.end())
          continue;
        auto cand = members;
        *std::find(cand.begin(), cand.end(), u) = static_cast<int>(v);
        CHECK(f_direct(p, cand) >= f_after - 1e-9 * (1.0 + f_after));
      }
    }
  }
}

TEST_CASE("aspiration admits a tabu swap that beats the best") {
  // Unique optimal swap is 0 -> 2; block expert 2 from entering.
  const auto p = profile_from_errors(
      {{10, 10}, {1, 1}, {-1, -1}, {5, 5}});
  const auto z = build_error_matrix(p);
  const auto q = build_gram(z);
  const std::vector<int> members{0, 3};  // f = 112.5
  std::vector<std::size_t> tabu_in(4, 0);
  const std::vector<std::size_t> tabu_out(4, 0);
  tabu_in[2] = 100;  // tabu until iteration 100

  // best_sse above the blocked swap's result: aspiration lets it through.
  auto c = tabu::best_swap(z, q, members, tabu_in, tabu_out, 1, 100.0);
  REQUIRE(c.found);
  CHECK(c.out == 0);
  CHECK(c.in == 2);
  CHECK(c.f_after == doctest::Approx(8.0).epsilon(1e-12));

  // best_sse below it: the tabu swap stays blocked, next best wins.
  c = tabu::best_swap(z, q, members, tabu_in, tabu_out, 1, 5.0);
  REQUIRE(c.found);
  CHECK(c.out == 0);
  CHECK(c.in == 1);
  CHECK(c.f_after == doctest::Approx(18.0).epsilon(1e-12));
}

TEST_CASE("identical seeds give identical traces") {
  auto rng = rng::derive(34, "tabu-det");
  const auto p = random_profile(rng, 10, 8);
  TabuParams params;
  params.seed = 99;
  params.max_iter = 50;
  TabuTrace t1;
  TabuTrace t2;
  const Team a = tabu::tabu_search(p, 4, params, &t1);
  const Team b = tabu::tabu_search(p, 4, params, &t2);
  CHECK(a.members == b.members);
  CHECK(a.sse == b.sse);
  CHECK(tabu::trace_to_csv(t1) == tabu::trace_to_csv(t2));

  params.seed = 100;
  TabuTrace t3;
  tabu::tabu_search(p, 4, params, &t3);
  CHECK(tabu::trace_to_csv(t1) != tabu::trace_to_csv(t3));
}

TEST_CASE("lower bound sandwich and monotone best on random instances") {
  auto rng = rng::derive(35, "tabu-sandwich");
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 5 + rng.next_below(5);
    const std::size_t k = 2 + rng.next_below(7);
    const std::size_t m = 2 + rng.next_below(n - 2);
    const auto p = random_profile(rng, n, k);
    const SolveContext ctx(p);
    TabuParams params;
    params.seed = rep;
    params.max_iter = 100;
    TabuTrace trace;
    const Team t = tabu::tabu_search(ctx, m, params, &trace);

    const double lb = qp::lower_bound(ctx.relaxed());
    CHECK(t.sse >= lb - 1e-9 * (1.0 + lb));
    const double f_init =
        sse_team(p, qp::max_weights_init(ctx.relaxed(), m));
    CHECK(t.sse <= f_init + 1e-12);

    for (std::size_t i = 1; i < trace.rows.size(); ++i)
      CHECK(trace.rows[i].best_sse <= trace.rows[i - 1].best_sse);
    CHECK(trace.rows.front().current_sse ==
          doctest::Approx(f_init).epsilon(1e-9));
  }
}

TEST_CASE("zero escape probability descends exactly like steepest descent") {
  auto rng = rng::derive(36, "tabu-descent");
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 6 + rng.next_below(3);
    const std::size_t k = 3 + rng.next_below(5);
    const std::size_t m = 2 + rng.next_below(3);
    const auto p = random_profile(rng, n, k);
    const SolveContext ctx(p);

    TabuParams params;
    params.escape_prob = 0.0;
    params.max_iter = 1;  // stop after the first non-improving move
    params.seed = rep;
    TabuTrace trace;
    tabu::tabu_search(ctx, m, params, &trace);

    const auto oracle = steepest_descent_trajectory(
        p, qp::max_weights_init(ctx.relaxed(), m));

    // The trace must follow the oracle's strictly improving path; the final
    // row is the single admitted non-improving move (absent when the run
    // ends at the lower bound).
    REQUIRE(trace.rows.size() >= oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i)
      CHECK(trace.rows[i].current_sse ==
            doctest::Approx(oracle[i]).epsilon(1e-9));
    if (trace.exit == ExitReason::stagnation) {
      CHECK(trace.rows.size() == oracle.size() + 1);
      CHECK(trace.rows.back().current_sse >=
            oracle.back() - 1e-9 * (1.0 + oracle.back()));
    }
  }
}

TEST_CASE("matches the exhaustive optimum on small instances") {
  auto rng = rng::derive(37, "tabu-opt");
  int hits = 0;
  const int total = 20;
  for (int rep = 0; rep < total; ++rep) {
    const auto p = random_profile(rng, 8, 6);
    const SolveContext ctx(p);
    const std::size_t m = 2 + rng.next_below(3);
    TabuParams params;
    params.seed = rep;
    const Team t = tabu::tabu_search(ctx, m, params);
    const Team exact = heuristics::best_team(ctx, m);
    CHECK(t.sse >= exact.sse - 1e-9 * (1.0 + exact.sse));
    if (t.sse <= exact.sse + 1e-9 * (1.0 + exact.sse)) ++hits;
  }
  CHECK(hits >= total - 2);
}

}  // TEST_SUITE
