#pragma once

#include <cstddef>
#include <vector>

#include "teamsel/model.hpp"

// Weight assignment relaxation: minimize g(w) = (1/2) w^T Q w over the
// probability simplex. Solved with the conditional-gradient (Frank-Wolfe)
// method using exact line search and away steps; the away steps give linear
// convergence on this polytope, which plain Frank-Wolfe lacks, while keeping
// the coordinate-argmin subproblem, the duality-gap stopping certificate and
// the monotone objective. The converged value is a lower bound on f(S) for
// every team S of every size, since each uniform indicator w_S is feasible.

namespace teamsel::qp {

enum class StepRule {
  exact_line_search,  // away-step variant, monotone objective
  diminishing,        // plain Frank-Wolfe with gamma = 2/(t+2)
};

struct SolverConfig {
  double tolerance = 1e-8;  // stop when gap <= tolerance * (1 + value)
  std::size_t max_iterations = 200000;
  StepRule step_rule = StepRule::exact_line_search;
};

struct RelaxedSolution {
  WeightVector w;
  double value = 0.0;       // g(w) = (1/2) w^T Q w at the returned point
  double gap = 0.0;         // Frank-Wolfe duality gap at the returned point
  std::size_t iterations = 0;
  bool converged = false;
};

/// Deterministic given (Q, cfg); gradient-argmin ties break to the lowest
/// index. Throws when negative curvature beyond -1e-6 * |Q|_inf shows up on a
/// line search ("matrix not PSD"). When the iteration budget runs out the
/// best iterate is returned with converged = false.
RelaxedSolution solve_simplex_qp(const GramMatrix& q,
                                 const SolverConfig& cfg = {});

/// The relaxed optimum as lowerBoundOfSSE. Throws on an unconverged input:
/// an unconverged iterate's value is not a bound.
double lower_bound(const RelaxedSolution& sol);

/// The m indices with the largest weights; all ties (including ties at zero)
/// break to the lowest index. Result is sorted ascending.
std::vector<int> max_weights_init(const RelaxedSolution& sol, std::size_t m);

}  // namespace teamsel::qp
