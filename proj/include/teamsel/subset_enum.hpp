#pragma once

#include <vector>

#include "teamsel/model.hpp"

namespace teamsel {

/// Best team of every size 1..n in a single pass over the subset lattice.
/// f(S) is evaluated as |S|^-2 * sum_t (sum_{i in S} z[i][t])^2 with error
/// sums maintained incrementally per recursion level, O(2^n * k) total. Ties
/// go to the lexicographically smallest member set, matching the exhaustive
/// oracle's rule. n is capped at 30.
struct BestBySize {
  std::vector<double> sse;                   // [m-1] best f over size-m teams
  std::vector<std::vector<int>> members;     // [m-1] the minimizing set
};

BestBySize best_teams_by_size(const ErrorMatrix& errors);

}  // namespace teamsel
