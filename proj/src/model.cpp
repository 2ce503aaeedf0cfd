#include "teamsel/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "teamsel/kernels.hpp"

namespace teamsel {

PredictionProfile::PredictionProfile(Matrix forecasts,
                                     std::vector<double> outcomes,
                                     std::vector<std::string> labels)
    : forecasts_(std::move(forecasts)),
      outcomes_(std::move(outcomes)),
      labels_(std::move(labels)) {
  if (forecasts_.rows() == 0) throw std::invalid_argument("profile: no experts");
  if (forecasts_.cols() == 0) throw std::invalid_argument("profile: no rounds");
  if (outcomes_.size() != forecasts_.cols())
    throw std::invalid_argument("profile: outcomes length != n_rounds");
  if (!forecasts_.all_finite())
    throw std::invalid_argument("profile: non-finite forecast");
  for (double x : outcomes_)
    if (!std::isfinite(x)) throw std::invalid_argument("profile: non-finite outcome");
  if (labels_.empty()) {
    labels_.reserve(forecasts_.rows());
    for (std::size_t i = 0; i < forecasts_.rows(); ++i)
      labels_.push_back("e" + std::to_string(i + 1));
  } else if (labels_.size() != forecasts_.rows()) {
    throw std::invalid_argument("profile: labels length != n_experts");
  }
}

ErrorMatrix::ErrorMatrix(Matrix errors) : errors_(std::move(errors)) {
  if (errors_.rows() == 0 || errors_.cols() == 0)
    throw std::invalid_argument("error matrix: empty");
  if (!errors_.all_finite())
    throw std::invalid_argument("error matrix: non-finite entry");
}

GramMatrix::GramMatrix(Matrix q) : q_(std::move(q)) {
  if (q_.rows() != q_.cols()) throw std::invalid_argument("gram: not square");
  for (std::size_t i = 0; i < q_.rows(); ++i)
    for (std::size_t j = i + 1; j < q_.cols(); ++j)
      if (q_(i, j) != q_(j, i)) throw std::invalid_argument("gram: not symmetric");
}

double GramMatrix::inf_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < q_.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < q_.cols(); ++j) s += std::abs(q_(i, j));
    best = std::max(best, s);
  }
  return best;
}

WeightVector::WeightVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("weights: empty");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw std::invalid_argument("weights: negative entry");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("weights: sum != 1");
}

ErrorMatrix build_error_matrix(const PredictionProfile& profile) {
  const std::size_t n = profile.n_experts();
  const std::size_t k = profile.n_rounds();
  Matrix z(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    const double* y = profile.forecasts().row(i);
    double* zi = z.row(i);
    for (std::size_t t = 0; t < k; ++t) zi[t] = y[t] - profile.outcomes()[t];
  }
  return ErrorMatrix(std::move(z));
}

namespace {

void check_members(std::span<const int> members, std::size_t n) {
  if (members.empty()) throw std::invalid_argument("empty team");
  std::vector<int> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || static_cast<std::size_t>(sorted[i]) >= n)
      throw std::invalid_argument("team member out of range");
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw std::invalid_argument("duplicate team member");
  }
}

}  // namespace

double sse_team(const PredictionProfile& profile, std::span<const int> members) {
  check_members(members, profile.n_experts());
  const auto& ops = kernels::active();
  const std::size_t k = profile.n_rounds();
  std::vector<double> sums(k, 0.0);
  std::vector<int> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());  // ascending-index accumulation
  for (int i : sorted) ops.axpy(1.0, profile.forecasts().row(i), sums.data(), k);
  return ops.mean_sse(sums.data(), 1.0 / static_cast<double>(members.size()),
                      profile.outcomes().data(), k);
}

double sse_weights(const ErrorMatrix& errors, std::span<const double> w) {
  if (w.size() != errors.n_experts())
    throw std::invalid_argument("sse_weights: weight length != n_experts");
  const auto& ops = kernels::active();
  const std::size_t k = errors.n_rounds();
  std::vector<double> r(k, 0.0);
  for (std::size_t i = 0; i < w.size(); ++i)
    ops.axpy(w[i], errors.row(i), r.data(), k);
  return ops.sum_squares(r.data(), k);
}

GramMatrix build_gram(const ErrorMatrix& errors) {
  const auto& ops = kernels::active();
  const std::size_t n = errors.n_experts();
  const std::size_t k = errors.n_rounds();
  Matrix q(n, n);
  // Upper triangle, mirrored, so symmetry is exact.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = 2.0 * ops.dot(errors.row(i), errors.row(j), k);
      q(i, j) = v;
      q(j, i) = v;
    }
  }
  return GramMatrix(std::move(q));
}

double quadratic_form(const GramMatrix& q, std::span<const double> w) {
  if (w.size() != q.size())
    throw std::invalid_argument("quadratic_form: length mismatch");
  const auto& ops = kernels::active();
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    acc += w[i] * ops.dot(q.row(i), w.data(), w.size());
  return acc;
}

Team make_team(const PredictionProfile& profile, std::vector<int> members) {
  const double f = sse_team(profile, members);
  std::sort(members.begin(), members.end());
  return Team{std::move(members), f};
}

}  // namespace teamsel
