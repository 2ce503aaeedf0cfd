#pragma once

#include "teamsel/model.hpp"
#include "teamsel/qp.hpp"

namespace teamsel {

/// Everything the solvers share for one profile: the error matrix, the Gram
/// matrix and the relaxed optimum. None of it depends on the team size, so
/// the harness builds one context per trial and reuses it across algorithms
/// and sizes.
class SolveContext {
 public:
  explicit SolveContext(PredictionProfile profile,
                        qp::SolverConfig solver_cfg = {})
      : profile_(std::move(profile)),
        errors_(build_error_matrix(profile_)),
        gram_(build_gram(errors_)),
        relaxed_(qp::solve_simplex_qp(gram_, solver_cfg)) {}

  const PredictionProfile& profile() const { return profile_; }
  const ErrorMatrix& errors() const { return errors_; }
  const GramMatrix& gram() const { return gram_; }
  const qp::RelaxedSolution& relaxed() const { return relaxed_; }

 private:
  PredictionProfile profile_;
  ErrorMatrix errors_;
  GramMatrix gram_;
  qp::RelaxedSolution relaxed_;
};

}  // namespace teamsel
