#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "teamsel/context.hpp"
#include "teamsel/model.hpp"

// Comparison heuristics for the team selection problem, plus the exhaustive
// best-team oracle they are measured against. All tie-breaks go to the
// lowest expert index; only random_rounding consumes randomness.

namespace teamsel::heuristics {

enum class MinEffectRule { remove_min_effect, remove_max_effect };

// Per-expert effect on g(w). With C[i][j] = <z_i, z_j>:
//   cross_minus_self:  2 w_i sum_{j != i} w_j C[i][j]  -  w_i^2 C[i][i]
//   marginal:          g(w) - g(w with w_i zeroed)
//                      = 2 w_i sum_{j != i} w_j C[i][j]  +  w_i^2 C[i][i]
enum class EffectFormula { cross_minus_self, marginal };

struct HeuristicConfig {
  std::optional<double> rounding_threshold;  // T; defaults to 1/(2m)
  double rounding_prob = 0.9;                // P
  MinEffectRule mineffect_rule = MinEffectRule::remove_min_effect;
  EffectFormula effect_formula = EffectFormula::cross_minus_self;
  std::uint64_t seed = 0;
};

struct RandomRoundingStats {
  std::size_t passes = 0;
  bool fallback_used = false;
};

/// Repeated passes over the experts in index order; an unselected expert with
/// weight above T is taken with probability P, below with 1-P, until m are
/// selected. Degenerate configurations that make 10000 consecutive passes
/// without progress fall back to the largest remaining weights.
Team random_rounding(const SolveContext& ctx, std::size_t m,
                     const HeuristicConfig& cfg,
                     RandomRoundingStats* stats = nullptr);
Team random_rounding(const PredictionProfile& profile, const WeightVector& w,
                     std::size_t m, const HeuristicConfig& cfg,
                     RandomRoundingStats* stats = nullptr);

/// The m experts with the largest relaxed weights.
Team max_weights(const SolveContext& ctx, std::size_t m);

double effect(const ErrorMatrix& errors, std::span<const double> w, int i,
              EffectFormula formula);

/// Drops one expert per round (by effect at uniform weights over the
/// survivors) until m remain.
Team min_effect(const SolveContext& ctx, std::size_t m,
                const HeuristicConfig& cfg = {});

/// Greedily takes the floor(m/2) disjoint pairs whose averaged forecast has
/// the smallest absolute-error sum; an odd m adds the remaining expert with
/// the smallest absolute-error sum. Requires m >= 2.
Team best_pairs(const SolveContext& ctx, std::size_t m);

/// Re-solves the relaxation on the survivors and drops the least-weighted
/// expert until m remain.
Team remove_least_weights(const SolveContext& ctx, std::size_t m,
                          const qp::SolverConfig& solver_cfg = {});

/// The m experts with the smallest absolute-error sums.
Team minimum_error(const SolveContext& ctx, std::size_t m);

/// Exact minimizer of f over size-m teams by enumeration, evaluating every
/// candidate through sse_team so the oracle stays independent of the
/// incremental evaluation paths it certifies. Ties go to the
/// lexicographically smallest set. Throws when C(n,m) exceeds the cap.
Team best_team(const SolveContext& ctx, std::size_t m,
               std::uint64_t enumeration_cap = 10'000'000);
Team best_team(const PredictionProfile& profile, std::size_t m,
               std::uint64_t enumeration_cap = 10'000'000);

}  // namespace teamsel::heuristics
