#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "teamsel/context.hpp"
#include "teamsel/model.hpp"

// Tabu search over size-m teams with the swap neighborhood. The search starts
// from the m largest relaxed weights, uses the relaxed optimum as a global
// lower bound for early termination, and stops otherwise after max_iter
// successive iterations without improving the best team.
//
// Tabu bookkeeping: when u is swapped out and v in, u may not re-enter for
// tenure_out_base + uniform[0, tenure_out_spread] iterations and v may not
// leave for ceil(tenure_in_factor * that same draw) iterations. A tabu swap
// is admissible anyway when it beats the best team found (aspiration). When
// no improving admissible swap exists, the least-worse admissible swap is
// taken with probability 1 - escape_prob, otherwise a uniformly random swap
// that ignores tabu status; the random swap is also taken when every swap is
// tabu and none aspirates.
//
// Per iteration the RNG is consumed in a fixed order: the escape decision (at
// most one draw, only when no improving swap exists), the random neighbor's
// member and non-member picks (only on escape), then one tenure draw. The
// stream is derived from (seed, "tabu", m).

namespace teamsel::tabu {

struct TabuParams {
  std::size_t max_iter = 1000;  // successive non-improving iterations allowed
  double escape_prob = 0.1;     // P
  std::size_t tenure_out_base = 7;
  std::optional<std::size_t> tenure_out_spread;  // defaults to ceil(m/2)
  double tenure_in_factor = 0.6;
  double lb_tolerance = 1e-9;
  std::uint64_t seed = 0;
};

enum class ExitReason { lower_bound, stagnation, single_team };

struct TraceRow {
  std::size_t iter;
  double current_sse;
  double best_sse;
};

struct TabuTrace {
  std::vector<TraceRow> rows;
  ExitReason exit = ExitReason::stagnation;
};

/// Trace rows as CSV: header, one row per iteration (row 0 is the initial
/// team), trailing `# exit=...` comment.
std::string trace_to_csv(const TabuTrace& trace);

Team tabu_search(const SolveContext& ctx, std::size_t m,
                 const TabuParams& params, TabuTrace* trace = nullptr);
Team tabu_search(const PredictionProfile& profile, std::size_t m,
                 const TabuParams& params, TabuTrace* trace = nullptr);

struct SwapChoice {
  bool found = false;
  int out = -1;
  int in = -1;
  double f_after = 0.0;
  double delta = 0.0;  // f_after - f(current)
};

/// Best admissible swap for the given state: minimizes f(S u {v} \ {u}) over
/// member u, non-member v; ties to the lowest (u, then v). An expert x may
/// enter while iteration <= tabu_until_in[x] only via aspiration
/// (f_after < best_sse), and likewise for leaving. Reference implementation
/// used by the tests; the search loop maintains the same quantities
/// incrementally.
SwapChoice best_swap(const ErrorMatrix& errors, const GramMatrix& gram,
                     std::span<const int> members,
                     std::span<const std::size_t> tabu_until_in,
                     std::span<const std::size_t> tabu_until_out,
                     std::size_t iteration, double best_sse);

}  // namespace teamsel::tabu
