#pragma once

#include <span>
#include <string>
#include <vector>

#include "teamsel/matrix.hpp"

// Data model for the team selection problem: n experts forecast a continuous
// quantity over k rounds. For a team S the objective is the sum of squared
// errors of the members' simple-average forecast,
//
//   f(S) = sum_t (mean_{i in S} y[i][t] - x[t])^2,
//
// and for a weight vector w over all experts
//
//   g(w) = sum_t (sum_i w[i] * z[i][t])^2,   z[i][t] = y[i][t] - x[t].
//
// g expands to the quadratic form (1/2) w^T Q w with q[i][j] = 2 * <z_i, z_j>,
// and f(S) = g(w_S) for w_S uniform on S; both identities are exercised by
// the test suite.

namespace teamsel {

/// n x k expert forecasts plus the k realized outcomes.
class PredictionProfile {
 public:
  /// Validates shape and finiteness; labels must have one entry per expert
  /// (pass {} to get e1..en).
  PredictionProfile(Matrix forecasts, std::vector<double> outcomes,
                    std::vector<std::string> labels = {});

  std::size_t n_experts() const { return forecasts_.rows(); }
  std::size_t n_rounds() const { return forecasts_.cols(); }
  const Matrix& forecasts() const { return forecasts_; }
  const std::vector<double>& outcomes() const { return outcomes_; }
  const std::vector<std::string>& labels() const { return labels_; }

  friend bool operator==(const PredictionProfile& a, const PredictionProfile& b) {
    return a.forecasts_ == b.forecasts_ && a.outcomes_ == b.outcomes_ &&
           a.labels_ == b.labels_;
  }

 private:
  Matrix forecasts_;
  std::vector<double> outcomes_;
  std::vector<std::string> labels_;
};

/// Forecast errors z[i][t] = y[i][t] - x[t], same shape as the forecasts.
class ErrorMatrix {
 public:
  explicit ErrorMatrix(Matrix errors);

  std::size_t n_experts() const { return errors_.rows(); }
  std::size_t n_rounds() const { return errors_.cols(); }
  const Matrix& values() const { return errors_; }
  const double* row(std::size_t i) const { return errors_.row(i); }

 private:
  Matrix errors_;
};

/// Symmetric PSD matrix q[i][j] = 2 * <z_i, z_j>.
class GramMatrix {
 public:
  explicit GramMatrix(Matrix q);

  std::size_t size() const { return q_.rows(); }
  const Matrix& values() const { return q_; }
  double operator()(std::size_t i, std::size_t j) const { return q_(i, j); }
  const double* row(std::size_t i) const { return q_.row(i); }

  /// max_i sum_j |q[i][j]|; scale reference for curvature tests.
  double inf_norm() const;

 private:
  Matrix q_;
};

/// Nonnegative weights over the experts summing to 1 (within 1e-9).
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& values() const { return weights_; }

 private:
  std::vector<double> weights_;
};

/// A team: sorted distinct expert indices with the objective value attached.
struct Team {
  std::vector<int> members;
  double sse = 0.0;
};

ErrorMatrix build_error_matrix(const PredictionProfile& profile);

/// f(S); throws on an empty, duplicated or out-of-range member set.
double sse_team(const PredictionProfile& profile, std::span<const int> members);

/// g(w) for arbitrary real w of length n (no simplex requirement).
double sse_weights(const ErrorMatrix& errors, std::span<const double> w);

GramMatrix build_gram(const ErrorMatrix& errors);

/// Quadratic form w^T Q w (no 1/2 factor).
double quadratic_form(const GramMatrix& q, std::span<const double> w);

/// Validates members and evaluates f; the returned members are sorted.
Team make_team(const PredictionProfile& profile, std::vector<int> members);

}  // namespace teamsel
