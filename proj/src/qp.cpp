#include "teamsel/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "teamsel/kernels.hpp"

namespace teamsel::qp {

namespace {

constexpr std::size_t kGradRefreshPeriod = 256;  // bounds incremental drift

void matvec(const GramMatrix& q, const std::vector<double>& w,
            std::vector<double>& out) {
  const auto& ops = kernels::active();
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i)
    out[i] = ops.dot(q.row(i), w.data(), n);
}

std::size_t argmin_grad(const std::vector<double>& grad) {
  std::size_t j = 0;
  for (std::size_t i = 1; i < grad.size(); ++i)
    if (grad[i] < grad[j]) j = i;  // ties keep the lowest index
  return j;
}

}  // namespace

RelaxedSolution solve_simplex_qp(const GramMatrix& q, const SolverConfig& cfg) {
  if (!(cfg.tolerance > 0.0))
    throw std::invalid_argument("solver: tolerance must be positive");
  if (cfg.max_iterations < 1)
    throw std::invalid_argument("solver: max_iterations must be >= 1");

  const auto& ops = kernels::active();
  const std::size_t n = q.size();
  const double q_norm = q.inf_norm();
  const double curv_floor = -1e-6 * q_norm;

  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  std::vector<double> grad(n);
  matvec(q, w, grad);

  std::vector<double> best_w = w;
  double best_value = std::numeric_limits<double>::infinity();

  std::size_t iter = 0;
  bool converged = false;
  while (true) {
    if (iter != 0 && iter % kGradRefreshPeriod == 0) matvec(q, w, grad);

    const std::size_t j = argmin_grad(grad);
    const double wqw = ops.dot(w.data(), grad.data(), n);
    const double value = 0.5 * wqw;
    const double gap = wqw - grad[j];

    if (value < best_value) {
      best_value = value;
      best_w = w;
    }

    if (gap <= cfg.tolerance * (1.0 + value)) {
      converged = true;
      break;
    }
    if (iter >= cfg.max_iterations) break;
    ++iter;

    if (cfg.step_rule == StepRule::diminishing) {
      const double gamma = 2.0 / static_cast<double>(iter + 1);
      ops.scale(w.data(), 1.0 - gamma, n);
      w[j] += gamma;
      ops.scale(grad.data(), 1.0 - gamma, n);
      ops.axpy(gamma, q.row(j), grad.data(), n);
      continue;
    }

    // Away vertex: largest gradient over the support.
    std::size_t a = n;
    for (std::size_t i = 0; i < n; ++i)
      if (w[i] > 0.0 && (a == n || grad[i] > grad[a])) a = i;
    const double gap_away = grad[a] - wqw;

    if (gap_away > gap) {
      // Move along w - e_a, at most until w[a] hits zero.
      const double gamma_max = w[a] / (1.0 - w[a]);
      const double curv = wqw - 2.0 * grad[a] + q(a, a);
      if (curv < curv_floor) throw std::runtime_error("matrix not PSD");
      double gamma =
          curv <= 1e-18 ? gamma_max : std::min(gap_away / curv, gamma_max);
      gamma = std::max(gamma, 0.0);
      const bool drop = gamma >= gamma_max;
      ops.scale(w.data(), 1.0 + gamma, n);
      w[a] = drop ? 0.0 : w[a] - gamma;
      ops.scale(grad.data(), 1.0 + gamma, n);
      ops.axpy(-gamma, q.row(a), grad.data(), n);
    } else {
      // Toward e_j; a zero-curvature direction takes the full step.
      const double curv = wqw - 2.0 * grad[j] + q(j, j);
      if (curv < curv_floor) throw std::runtime_error("matrix not PSD");
      const double gamma =
          curv <= 1e-18 ? 1.0 : std::clamp(gap / curv, 0.0, 1.0);
      if (gamma >= 1.0) {
        std::fill(w.begin(), w.end(), 0.0);
        w[j] = 1.0;
        for (std::size_t i = 0; i < n; ++i) grad[i] = q(j, i);
      } else {
        ops.scale(w.data(), 1.0 - gamma, n);
        w[j] += gamma;
        ops.scale(grad.data(), 1.0 - gamma, n);
        ops.axpy(gamma, q.row(j), grad.data(), n);
      }
    }
  }

  if (!converged) w = best_w;

  // One renormalization, then report value and gap at the exact point
  // handed back.
  for (double& x : w) x = std::max(x, 0.0);
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  ops.scale(w.data(), 1.0 / sum, n);
  matvec(q, w, grad);
  const double wqw = ops.dot(w.data(), grad.data(), n);
  const double value = 0.5 * wqw;
  const double gap = wqw - grad[argmin_grad(grad)];

  return RelaxedSolution{WeightVector(std::move(w)), value, gap, iter,
                         converged};
}

double lower_bound(const RelaxedSolution& sol) {
  if (!sol.converged)
    throw std::runtime_error(
        "lower_bound: solver did not converge; an unconverged iterate is not "
        "a bound");
  return sol.value;
}

std::vector<int> max_weights_init(const RelaxedSolution& sol, std::size_t m) {
  const std::size_t n = sol.w.size();
  if (m < 1 || m > n)
    throw std::invalid_argument("max_weights_init: m out of range");
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (sol.w[a] != sol.w[b]) return sol.w[a] > sol.w[b];
    return a < b;  // all ties, including ties at zero, to the lowest index
  });
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace teamsel::qp
