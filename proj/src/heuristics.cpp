#include "teamsel/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "teamsel/kernels.hpp"
#include "teamsel/rng.hpp"

namespace teamsel::heuristics {

namespace {

void check_m(std::size_t m, std::size_t n) {
  if (m < 1 || m > n) throw std::invalid_argument("m out of range");
}

/// Indices 0..n-1 ranked by key ascending, ties to the lowest index.
std::vector<int> ranked_indices(const std::vector<double>& key) {
  std::vector<int> idx(key.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (key[a] != key[b]) return key[a] < key[b];
    return a < b;
  });
  return idx;
}

std::vector<double> abs_error_sums(const PredictionProfile& profile) {
  std::vector<double> sums(profile.n_experts(), 0.0);
  for (std::size_t i = 0; i < profile.n_experts(); ++i) {
    const double* y = profile.forecasts().row(i);
    double acc = 0.0;
    for (std::size_t t = 0; t < profile.n_rounds(); ++t)
      acc += std::abs(y[t] - profile.outcomes()[t]);
    sums[i] = acc;
  }
  return sums;
}

}  // namespace

Team random_rounding(const SolveContext& ctx, std::size_t m,
                     const HeuristicConfig& cfg, RandomRoundingStats* stats) {
  return random_rounding(ctx.profile(), ctx.relaxed().w, m, cfg, stats);
}

Team random_rounding(const PredictionProfile& profile, const WeightVector& w,
                     std::size_t m, const HeuristicConfig& cfg,
                     RandomRoundingStats* stats) {
  const std::size_t n = profile.n_experts();
  check_m(m, n);
  if (!(cfg.rounding_prob >= 0.0 && cfg.rounding_prob <= 1.0))
    throw std::invalid_argument("random_rounding: P outside [0,1]");
  const double threshold =
      cfg.rounding_threshold.value_or(1.0 / (2.0 * static_cast<double>(m)));
  if (!(threshold >= 0.0))
    throw std::invalid_argument("random_rounding: T must be nonnegative");

  auto rng = rng::derive(cfg.seed, "random-rounding");
  std::vector<char> selected(n, 0);
  std::size_t count = 0;
  std::size_t passes = 0;
  std::size_t stalled = 0;
  bool fallback = false;

  while (count < m) {
    ++passes;
    const std::size_t before = count;
    for (std::size_t i = 0; i < n && count < m; ++i) {
      if (selected[i]) continue;
      const double p =
          w[i] > threshold ? cfg.rounding_prob : 1.0 - cfg.rounding_prob;
      if (rng.next_double() < p) {
        selected[i] = 1;
        ++count;
      }
    }
    stalled = count == before ? stalled + 1 : 0;
    if (stalled >= 10000) {
      // Degenerate P/T combination; finish with the largest leftover weights.
      fallback = true;
      std::vector<double> neg(n);
      for (std::size_t i = 0; i < n; ++i) neg[i] = -w[i];
      for (int i : ranked_indices(neg)) {
        if (count == m) break;
        if (!selected[i]) {
          selected[i] = 1;
          ++count;
        }
      }
    }
  }

  if (stats != nullptr) *stats = RandomRoundingStats{passes, fallback};
  std::vector<int> members;
  for (std::size_t i = 0; i < n; ++i)
    if (selected[i]) members.push_back(static_cast<int>(i));
  return make_team(profile, std::move(members));
}

Team max_weights(const SolveContext& ctx, std::size_t m) {
  return make_team(ctx.profile(), qp::max_weights_init(ctx.relaxed(), m));
}

double effect(const ErrorMatrix& errors, std::span<const double> w, int i,
              EffectFormula formula) {
  if (i < 0 || static_cast<std::size_t>(i) >= errors.n_experts())
    throw std::invalid_argument("effect: index out of range");
  if (w.size() != errors.n_experts())
    throw std::invalid_argument("effect: weight length mismatch");
  const auto& ops = kernels::active();
  const std::size_t k = errors.n_rounds();
  const double wi = w[i];
  double cross = 0.0;
  for (std::size_t j = 0; j < errors.n_experts(); ++j) {
    if (static_cast<int>(j) == i) continue;
    cross += w[j] * ops.dot(errors.row(i), errors.row(j), k);
  }
  const double self = wi * wi * ops.sum_squares(errors.row(i), k);
  const double crossed = 2.0 * wi * cross;
  return formula == EffectFormula::marginal ? crossed + self : crossed - self;
}

Team min_effect(const SolveContext& ctx, std::size_t m,
                const HeuristicConfig& cfg) {
  const std::size_t n = ctx.profile().n_experts();
  check_m(m, n);
  std::vector<int> current(n);
  std::iota(current.begin(), current.end(), 0);
  std::vector<double> w(n, 0.0);
  while (current.size() > m) {
    const double u = 1.0 / static_cast<double>(current.size());
    std::fill(w.begin(), w.end(), 0.0);
    for (int i : current) w[i] = u;
    std::size_t pick = 0;
    double pick_val = effect(ctx.errors(), w, current[0], cfg.effect_formula);
    for (std::size_t c = 1; c < current.size(); ++c) {
      const double v = effect(ctx.errors(), w, current[c], cfg.effect_formula);
      const bool better = cfg.mineffect_rule == MinEffectRule::remove_min_effect
                              ? v < pick_val
                              : v > pick_val;
      if (better) {  // ties keep the earlier (lower) index
        pick = c;
        pick_val = v;
      }
    }
    current.erase(current.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return make_team(ctx.profile(), std::move(current));
}

Team best_pairs(const SolveContext& ctx, std::size_t m) {
  const std::size_t n = ctx.profile().n_experts();
  if (m < 2) throw std::invalid_argument("best_pairs: m must be at least 2");
  check_m(m, n);

  struct Pair {
    double score;
    int i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(n * (n - 1) / 2);
  const auto& profile = ctx.profile();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* yi = profile.forecasts().row(i);
      const double* yj = profile.forecasts().row(j);
      double score = 0.0;
      for (std::size_t t = 0; t < profile.n_rounds(); ++t)
        score += std::abs(0.5 * (yi[t] + yj[t]) - profile.outcomes()[t]);
      pairs.push_back({score, static_cast<int>(i), static_cast<int>(j)});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.score != b.score) return a.score < b.score;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  std::vector<char> used(n, 0);
  std::vector<int> members;
  const std::size_t want_pairs = m / 2;
  for (const Pair& p : pairs) {
    if (members.size() / 2 == want_pairs) break;
    if (used[p.i] || used[p.j]) continue;
    used[p.i] = used[p.j] = 1;
    members.push_back(p.i);
    members.push_back(p.j);
  }
  if (m % 2 == 1) {
    const auto sums = abs_error_sums(profile);
    for (int i : ranked_indices(sums)) {
      if (!used[i]) {
        members.push_back(i);
        break;
      }
    }
  }
  return make_team(profile, std::move(members));
}

Team remove_least_weights(const SolveContext& ctx, std::size_t m,
                          const qp::SolverConfig& solver_cfg) {
  const std::size_t n = ctx.profile().n_experts();
  check_m(m, n);
  std::vector<int> surviving(n);
  std::iota(surviving.begin(), surviving.end(), 0);
  while (surviving.size() > m) {
    const std::size_t s = surviving.size();
    Matrix sub(s, s);
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 0; b < s; ++b)
        sub(a, b) = ctx.gram()(surviving[a], surviving[b]);
    const auto sol = qp::solve_simplex_qp(GramMatrix(std::move(sub)), solver_cfg);
    if (!sol.converged)
      throw std::runtime_error("remove_least_weights: relaxation did not converge");
    std::size_t drop = 0;
    for (std::size_t a = 1; a < s; ++a)
      if (sol.w[a] < sol.w[drop]) drop = a;  // ties keep the lower index
    surviving.erase(surviving.begin() + static_cast<std::ptrdiff_t>(drop));
  }
  return make_team(ctx.profile(), std::move(surviving));
}

Team minimum_error(const SolveContext& ctx, std::size_t m) {
  const std::size_t n = ctx.profile().n_experts();
  check_m(m, n);
  auto ranked = ranked_indices(abs_error_sums(ctx.profile()));
  ranked.resize(m);
  return make_team(ctx.profile(), std::move(ranked));
}

namespace {

double binomial_as_double(std::size_t n, std::size_t m) {
  double c = 1.0;
  for (std::size_t i = 0; i < m; ++i)
    c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return c;
}

}  // namespace

Team best_team(const PredictionProfile& profile, std::size_t m,
               std::uint64_t enumeration_cap) {
  const std::size_t n = profile.n_experts();
  check_m(m, n);
  if (binomial_as_double(n, m) > static_cast<double>(enumeration_cap))
    throw std::runtime_error(
        "best_team: C(n,m) exceeds the enumeration cap; use tabu search");

  std::vector<int> combo(m);
  std::iota(combo.begin(), combo.end(), 0);
  std::vector<int> best = combo;
  double best_f = sse_team(profile, combo);
  // Lexicographic advance; the strict comparison keeps the first (and hence
  // lexicographically smallest) minimizer.
  while (true) {
    std::size_t pos = m;
    while (pos > 0 &&
           combo[pos - 1] == static_cast<int>(n - m + pos - 1))
      --pos;
    if (pos == 0) break;
    ++combo[pos - 1];
    for (std::size_t q = pos; q < m; ++q) combo[q] = combo[q - 1] + 1;
    const double f = sse_team(profile, combo);
    if (f < best_f) {
      best_f = f;
      best = combo;
    }
  }
  return Team{std::move(best), best_f};
}

Team best_team(const SolveContext& ctx, std::size_t m,
               std::uint64_t enumeration_cap) {
  return best_team(ctx.profile(), m, enumeration_cap);
}

}  // namespace teamsel::heuristics
