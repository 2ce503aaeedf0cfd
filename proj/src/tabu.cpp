#include "teamsel/tabu.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "teamsel/kernels.hpp"
#include "teamsel/profile_io.hpp"
#include "teamsel/rng.hpp"

namespace teamsel::tabu {

namespace {

constexpr std::size_t kRefreshPeriod = 256;  // exact recompute cadence

struct ScanState {
  double team_sq = 0.0;           // sum_t (team error sum)^2
  std::vector<double> b;          // b[i] = <team error sum, z_i>
  std::vector<char> in_team;
  std::vector<int> members;       // sorted ascending
  std::vector<int> outsiders;     // sorted ascending
};

// f(S u {v} \ {u}) from cached quantities: the new squared sum is
// team_sq - 2 b[u] + 2 b[v] + C[u][u] + C[v][v] - 2 C[u][v] with
// C[x][y] = q[x][y] / 2.
double f_after_swap(const ScanState& s, const GramMatrix& q, int u, int v,
                    double inv_m2) {
  const double sq = s.team_sq - 2.0 * s.b[u] + 2.0 * s.b[v] +
                    0.5 * (q(u, u) + q(v, v)) - q(u, v);
  return sq * inv_m2;
}

SwapChoice scan_swaps(const ScanState& s, const GramMatrix& q,
                      std::span<const std::size_t> tabu_until_in,
                      std::span<const std::size_t> tabu_until_out,
                      std::size_t iteration, double best_sse, double inv_m2) {
  SwapChoice choice;
  for (int u : s.members) {
    const bool u_tabu = iteration <= tabu_until_out[u];
    for (int v : s.outsiders) {
      const bool blocked = u_tabu || iteration <= tabu_until_in[v];
      const double f = f_after_swap(s, q, u, v, inv_m2);
      if (blocked && !(f < best_sse)) continue;  // aspiration override
      if (!choice.found || f < choice.f_after) {
        choice.found = true;
        choice.out = u;
        choice.in = v;
        choice.f_after = f;
      }
    }
  }
  if (choice.found) choice.delta = choice.f_after - s.team_sq * inv_m2;
  return choice;
}

void rebuild_state(ScanState& s, const ErrorMatrix& errors,
                   std::vector<double>& team_sum) {
  const auto& ops = kernels::active();
  const std::size_t n = errors.n_experts();
  const std::size_t k = errors.n_rounds();
  std::fill(team_sum.begin(), team_sum.end(), 0.0);
  for (int i : s.members) ops.axpy(1.0, errors.row(i), team_sum.data(), k);
  s.team_sq = ops.sum_squares(team_sum.data(), k);
  s.b.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    s.b[i] = ops.dot(team_sum.data(), errors.row(i), k);
}

}  // namespace

SwapChoice best_swap(const ErrorMatrix& errors, const GramMatrix& gram,
                     std::span<const int> members,
                     std::span<const std::size_t> tabu_until_in,
                     std::span<const std::size_t> tabu_until_out,
                     std::size_t iteration, double best_sse) {
  const std::size_t n = errors.n_experts();
  ScanState s;
  s.members.assign(members.begin(), members.end());
  std::sort(s.members.begin(), s.members.end());
  s.in_team.assign(n, 0);
  for (int i : s.members) s.in_team[i] = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (!s.in_team[i]) s.outsiders.push_back(static_cast<int>(i));
  std::vector<double> team_sum(errors.n_rounds(), 0.0);
  rebuild_state(s, errors, team_sum);
  const double inv_m2 =
      1.0 / (static_cast<double>(members.size()) * static_cast<double>(members.size()));
  return scan_swaps(s, gram, tabu_until_in, tabu_until_out, iteration,
                    best_sse, inv_m2);
}

Team tabu_search(const SolveContext& ctx, std::size_t m,
                 const TabuParams& params, TabuTrace* trace) {
  const std::size_t n = ctx.profile().n_experts();
  if (m < 1 || m > n) throw std::invalid_argument("tabu_search: m out of range");
  if (params.max_iter < 1)
    throw std::invalid_argument("tabu_search: max_iter must be >= 1");
  if (!(params.escape_prob >= 0.0 && params.escape_prob <= 1.0))
    throw std::invalid_argument("tabu_search: escape_prob outside [0,1]");

  if (trace != nullptr) *trace = TabuTrace{};

  if (m == n) {
    std::vector<int> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
    if (trace != nullptr) trace->exit = ExitReason::single_team;
    return make_team(ctx.profile(), std::move(all));
  }

  const auto& errors = ctx.errors();
  const auto& q = ctx.gram();
  const auto& ops = kernels::active();
  const std::size_t k = errors.n_rounds();
  const double inv_m2 = 1.0 / (static_cast<double>(m) * static_cast<double>(m));

  // g(w) at an unconverged iterate is not a bound; zero always is.
  const double lb = ctx.relaxed().converged ? ctx.relaxed().value : 0.0;
  const double lb_cut = params.lb_tolerance * (1.0 + lb);

  ScanState s;
  s.members = qp::max_weights_init(ctx.relaxed(), m);
  s.in_team.assign(n, 0);
  for (int i : s.members) s.in_team[i] = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (!s.in_team[i]) s.outsiders.push_back(static_cast<int>(i));

  std::vector<double> team_sum(k, 0.0);
  rebuild_state(s, errors, team_sum);
  double f_current = s.team_sq * inv_m2;

  std::vector<int> best_members = s.members;
  double f_best = f_current;

  if (trace != nullptr) trace->rows.push_back({0, f_current, f_best});
  if (std::abs(f_current - lb) <= lb_cut) {
    if (trace != nullptr) trace->exit = ExitReason::lower_bound;
    return make_team(ctx.profile(), std::move(best_members));
  }

  auto rng = rng::derive(params.seed, "tabu", m);
  const std::size_t spread = params.tenure_out_spread.value_or((m + 1) / 2);
  std::vector<std::size_t> tabu_until_in(n, 0);
  std::vector<std::size_t> tabu_until_out(n, 0);

  std::size_t stagnation = 0;
  std::size_t iter = 0;
  ExitReason exit = ExitReason::stagnation;

  while (stagnation < params.max_iter) {
    ++iter;
    const SwapChoice choice = scan_swaps(s, q, tabu_until_in, tabu_until_out,
                                         iter, f_best, inv_m2);

    int u;
    int v;
    if (choice.found && choice.f_after < f_current) {
      u = choice.out;
      v = choice.in;
    } else {
      bool escape = !choice.found;
      if (!escape && params.escape_prob > 0.0)
        escape = rng.next_double() < params.escape_prob;
      if (escape) {
        u = s.members[rng.next_below(m)];
        v = s.outsiders[rng.next_below(n - m)];
      } else {
        u = choice.out;
        v = choice.in;
      }
    }

    // Apply the swap and keep the cached quantities in sync.
    ops.axpy(-1.0, errors.row(u), team_sum.data(), k);
    ops.axpy(1.0, errors.row(v), team_sum.data(), k);
    ops.axpy(-0.5, q.row(u), s.b.data(), n);
    ops.axpy(0.5, q.row(v), s.b.data(), n);
    s.in_team[u] = 0;
    s.in_team[v] = 1;
    *std::find(s.members.begin(), s.members.end(), u) = v;
    std::sort(s.members.begin(), s.members.end());
    *std::find(s.outsiders.begin(), s.outsiders.end(), v) = u;
    std::sort(s.outsiders.begin(), s.outsiders.end());

    if (iter % kRefreshPeriod == 0) {
      rebuild_state(s, errors, team_sum);
    } else {
      s.team_sq = ops.sum_squares(team_sum.data(), k);
    }
    f_current = s.team_sq * inv_m2;

    const std::size_t tenure =
        params.tenure_out_base + rng.next_below(spread + 1);
    tabu_until_in[u] = iter + tenure;
    tabu_until_out[v] =
        iter + static_cast<std::size_t>(
                   std::ceil(params.tenure_in_factor * static_cast<double>(tenure)));

    if (f_current < f_best) {
      f_best = f_current;
      best_members = s.members;
      stagnation = 0;
    } else {
      ++stagnation;
    }
    if (trace != nullptr) trace->rows.push_back({iter, f_current, f_best});

    if (std::abs(f_current - lb) <= lb_cut) {
      best_members = s.members;
      exit = ExitReason::lower_bound;
      break;
    }
  }

  if (trace != nullptr) trace->exit = exit;
  return make_team(ctx.profile(), std::move(best_members));
}

Team tabu_search(const PredictionProfile& profile, std::size_t m,
                 const TabuParams& params, TabuTrace* trace) {
  return tabu_search(SolveContext(profile), m, params, trace);
}

std::string trace_to_csv(const TabuTrace& trace) {
  std::string out = "iter,current_sse,best_sse\n";
  for (const auto& r : trace.rows) {
    out += std::to_string(r.iter);
    out += ",";
    out += format_double(r.current_sse);
    out += ",";
    out += format_double(r.best_sse);
    out += "\n";
  }
  switch (trace.exit) {
    case ExitReason::lower_bound:
      out += "# exit=lower_bound\n";
      break;
    case ExitReason::stagnation:
      out += "# exit=stagnation\n";
      break;
    case ExitReason::single_team:
      out += "# exit=single_team\n";
      break;
  }
  return out;
}

}  // namespace teamsel::tabu
