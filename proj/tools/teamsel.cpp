#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "teamsel/bench.hpp"
#include "teamsel/context.hpp"
#include "teamsel/heuristics.hpp"
#include "teamsel/kernels.hpp"
#include "teamsel/profile_io.hpp"
#include "teamsel/reduction.hpp"
#include "teamsel/scenarios.hpp"
#include "teamsel/subset_enum.hpp"
#include "teamsel/tabu.hpp"

namespace {

using namespace teamsel;

std::string join_members(const std::vector<int>& members) {
  std::string out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ";";
    out += std::to_string(members[i]);
  }
  return out;
}

reduction::RegularGraph parse_graph_spec(const std::string& spec) {
  if (spec == "petersen") return reduction::petersen();
  if (spec.rfind("cycle:", 0) == 0)
    return reduction::cycle(std::stoul(spec.substr(6)));
  if (spec.rfind("complete:", 0) == 0)
    return reduction::complete(std::stoul(spec.substr(9)));
  if (spec.rfind("circulant:", 0) == 0) {
    const std::string rest = spec.substr(10);
    const auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("circulant spec: expected circulant:N:o1,o2,...");
    const std::size_t n = std::stoul(rest.substr(0, colon));
    std::vector<int> offsets;
    std::stringstream ss(rest.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) offsets.push_back(std::stoi(tok));
    return reduction::circulant(n, offsets);
  }
  return reduction::load_edge_list(spec);
}

struct SolveOptions {
  std::string profile_path;
  std::string algorithm = "tabu";
  std::string m_arg = "all";
  std::uint64_t seed = 0;
  std::size_t max_iter = 1000;
  double escape_prob = 0.1;
  std::string trace_path;
  double rounding_prob = 0.9;
  std::optional<double> rounding_threshold;
  std::string mineffect_rule = "remove-min";
  std::string effect_formula = "cross-minus-self";
  std::uint64_t cap = 10'000'000;
};

Team solve_once(const SolveContext& ctx, const SolveOptions& opt,
                std::size_t m, tabu::TabuTrace* trace) {
  using bench::Algorithm;
  const Algorithm algo = bench::algorithm_from_name(opt.algorithm);
  heuristics::HeuristicConfig hcfg;
  hcfg.seed = opt.seed;
  hcfg.rounding_prob = opt.rounding_prob;
  hcfg.rounding_threshold = opt.rounding_threshold;
  hcfg.mineffect_rule = opt.mineffect_rule == "remove-max"
                            ? heuristics::MinEffectRule::remove_max_effect
                            : heuristics::MinEffectRule::remove_min_effect;
  hcfg.effect_formula = opt.effect_formula == "marginal"
                            ? heuristics::EffectFormula::marginal
                            : heuristics::EffectFormula::cross_minus_self;
  switch (algo) {
    case Algorithm::tabu: {
      tabu::TabuParams params;
      params.seed = opt.seed;
      params.max_iter = opt.max_iter;
      params.escape_prob = opt.escape_prob;
      return tabu::tabu_search(ctx, m, params, trace);
    }
    case Algorithm::best_team:
      return heuristics::best_team(ctx, m, opt.cap);
    case Algorithm::random_rounding:
      return heuristics::random_rounding(ctx, m, hcfg);
    case Algorithm::max_weights:
      return heuristics::max_weights(ctx, m);
    case Algorithm::min_effect:
      return heuristics::min_effect(ctx, m, hcfg);
    case Algorithm::best_pairs:
      if (m == 1) return heuristics::minimum_error(ctx, 1);  // pairing undefined
      return heuristics::best_pairs(ctx, m);
    case Algorithm::remove_least_weights:
      return heuristics::remove_least_weights(ctx, m);
    case Algorithm::minimum_error:
      return heuristics::minimum_error(ctx, m);
  }
  throw std::logic_error("unreachable");
}

int cmd_gen(const std::string& scenario, std::size_t n, std::size_t k,
            std::uint64_t seed, double outcome_sigma, const std::string& out) {
  scenarios::ScenarioSpec spec;
  spec.kind = scenarios::kind_from_name(scenario);
  spec.n_experts = n;
  spec.n_rounds = k;
  spec.seed = seed;
  spec.outcome_sigma = outcome_sigma;
  const auto [profile, pop] = scenarios::generate(spec);
  save_profile(profile, out);

  nlohmann::json meta;
  meta["scenario"] = scenario;
  meta["seed"] = seed;
  meta["n_experts"] = n;
  meta["n_rounds"] = k;
  meta["outcome_sigma"] = outcome_sigma;
  auto experts = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i) {
    nlohmann::json e;
    e["mean"] = pop.means[i];
    if (!pop.sigmas.empty()) e["sigma"] = pop.sigmas[i];
    experts.push_back(std::move(e));
  }
  meta["experts"] = std::move(experts);
  std::ofstream mf(out + ".meta.json", std::ios::binary);
  mf << meta.dump(2) << "\n";
  return 0;
}

int cmd_solve(const SolveOptions& opt) {
  const SolveContext ctx(load_profile(opt.profile_path));
  const std::size_t n = ctx.profile().n_experts();

  std::vector<std::size_t> sizes;
  if (opt.m_arg == "all") {
    for (std::size_t m = 1; m <= n; ++m) sizes.push_back(m);
  } else {
    sizes.push_back(std::stoul(opt.m_arg));
  }

  tabu::TabuTrace trace;
  const bool want_trace = !opt.trace_path.empty();
  if (want_trace && opt.algorithm != "tabu")
    throw std::invalid_argument("--trace only applies to the tabu algorithm");

  std::optional<Team> best;
  double best_ms = 0.0;
  std::string trace_csv;
  for (std::size_t m : sizes) {
    const auto start = std::chrono::steady_clock::now();
    const Team team = solve_once(ctx, opt, m, want_trace ? &trace : nullptr);
    const auto stop = std::chrono::steady_clock::now();
    const double ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    if (!best || team.sse < best->sse) {
      best = team;
      best_ms = ms;
      if (want_trace) trace_csv = tabu::trace_to_csv(trace);
    }
  }

  std::cout << "algorithm,m,members,sse,runtime_ms\n";
  std::cout << opt.algorithm << "," << best->members.size() << ","
            << join_members(best->members) << "," << format_double(best->sse)
            << "," << format_double(best_ms) << "\n";

  if (want_trace) {
    std::ofstream tf(opt.trace_path, std::ios::binary);
    if (!tf) throw std::runtime_error(opt.trace_path + ": cannot write");
    tf << trace_csv;
  }
  return 0;
}

int cmd_weights(const std::string& profile_path, double tolerance,
                std::size_t max_iter) {
  const auto profile = load_profile(profile_path);
  qp::SolverConfig cfg;
  cfg.tolerance = tolerance;
  cfg.max_iterations = max_iter;
  const SolveContext ctx(profile, cfg);
  const auto& sol = ctx.relaxed();
  std::cout << "expert,weight\n";
  for (std::size_t i = 0; i < sol.w.size(); ++i)
    std::cout << profile.labels()[i] << "," << format_double(sol.w[i]) << "\n";
  std::cout << "# value=" << format_double(sol.value)
            << " gap=" << format_double(sol.gap) << " iters=" << sol.iterations
            << (sol.converged ? "" : " unconverged") << "\n";
  return 0;
}

int cmd_reduce(const std::string& graph_spec, const std::string& emit,
               bool alpha) {
  const auto g = parse_graph_spec(graph_spec);
  if (!emit.empty()) save_profile(reduction::profile_from_graph(g), emit);
  if (alpha)
    std::cout << "independence_number," << reduction::independence_number(g)
              << "\n";
  return 0;
}

bench::BenchConfig load_bench_config(const std::string& config_path,
                                     const std::string& out_dir) {
  bench::BenchConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw std::runtime_error(config_path + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    cfg = bench::config_from_json(buf.str());
  }
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"teamsel: pick the expert team whose average forecast has the "
               "least squared error"};
  app.require_subcommand(1);

  std::string kernels_opt = "auto";
  app.add_option("--kernels", kernels_opt, "Force a kernel backend")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic profile");
  std::string gen_scenario = "normal1";
  std::size_t gen_n = 15;
  std::size_t gen_k = 30;
  std::uint64_t gen_seed = 0;
  double gen_sigma = 1.0;
  std::string gen_out;
  gen->add_option("--scenario", gen_scenario,
                  "normal1|normal2|normal3|exp");
  gen->add_option("--n", gen_n, "Number of experts");
  gen->add_option("--k", gen_k, "Number of rounds");
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--outcome-sigma", gen_sigma,
                  "Outcome std dev (normal scenarios)");
  gen->add_option("--out", gen_out, "Output profile path (.csv or .json)")
      ->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Select a team");
  SolveOptions sopt;
  solve->add_option("--profile", sopt.profile_path, "Profile file")->required();
  solve->add_option("--algorithm", sopt.algorithm,
                    "tabu|best-team|random-rounding|max-weights|min-effect|"
                    "best-pairs|remove-lw|min-error");
  solve->add_option("--m", sopt.m_arg, "Team size, or 'all' for the best over "
                    "m=1..n");
  solve->add_option("--seed", sopt.seed, "Seed");
  solve->add_option("--max-iter", sopt.max_iter, "Tabu stagnation limit");
  solve->add_option("--escape-prob", sopt.escape_prob, "Tabu escape probability");
  solve->add_option("--trace", sopt.trace_path, "Write per-iteration tabu trace");
  solve->add_option("--rounding-prob", sopt.rounding_prob, "Random rounding P");
  double thr = -1.0;
  auto* thr_opt = solve->add_option("--rounding-threshold", thr,
                                    "Random rounding T (default 1/(2m))");
  solve->add_option("--mineffect-rule", sopt.mineffect_rule,
                    "remove-min|remove-max");
  solve->add_option("--effect-formula", sopt.effect_formula,
                    "cross-minus-self|marginal");
  solve->add_option("--cap", sopt.cap, "Enumeration cap for best-team");

  // weights
  auto* weights = app.add_subcommand("weights", "Solve the weight relaxation");
  std::string w_profile;
  double w_tol = 1e-8;
  std::size_t w_maxiter = 200000;
  weights->add_option("--profile", w_profile, "Profile file")->required();
  weights->add_option("--tolerance", w_tol, "Duality-gap tolerance");
  weights->add_option("--max-iter", w_maxiter, "Iteration budget");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Graph-reduction instances");
  std::string r_graph;
  std::string r_emit;
  bool r_alpha = false;
  reduce->add_option("--graph", r_graph,
                     "Edge-list path, or cycle:N, complete:N, petersen, "
                     "circulant:N:o1,o2,...")
      ->required();
  reduce->add_option("--emit", r_emit, "Write the reduced instance as a profile");
  reduce->add_flag("--alpha", r_alpha,
                   "Recover the independence number (exact solver)");

  // bench / sweep
  auto* bench_cmd = app.add_subcommand("bench", "Batch quality/runtime runs");
  std::string bench_what;
  std::string bench_config;
  std::string bench_out;
  bench_cmd->add_option("what", bench_what, "table1|table2")->required();
  bench_cmd->add_option("--config", bench_config, "JSON config overrides");
  bench_cmd->add_option("--out-dir", bench_out, "Output directory");

  auto* sweep_cmd = app.add_subcommand("sweep", "Team-size / profile-size sweeps");
  std::string sweep_what;
  std::string sweep_config;
  std::string sweep_out;
  sweep_cmd->add_option("what", sweep_what, "size|profile")->required();
  sweep_cmd->add_option("--config", sweep_config, "JSON config overrides");
  sweep_cmd->add_option("--out-dir", sweep_out, "Output directory");

  // info
  auto* info = app.add_subcommand("info", "Show kernel backends");

  CLI11_PARSE(app, argc, argv);

  try {
    if (kernels_opt != "auto") {
      const auto backend = kernels_opt == "scalar"
                               ? teamsel::kernels::Backend::scalar
                               : teamsel::kernels::Backend::avx2;
      if (!teamsel::kernels::set_backend(backend)) {
        std::cerr << "kernel backend '" << kernels_opt
                  << "' not available on this host\n";
        return 1;
      }
    }
    if (thr_opt->count() > 0) sopt.rounding_threshold = thr;

    if (gen->parsed())
      return cmd_gen(gen_scenario, gen_n, gen_k, gen_seed, gen_sigma, gen_out);
    if (solve->parsed()) return cmd_solve(sopt);
    if (weights->parsed()) return cmd_weights(w_profile, w_tol, w_maxiter);
    if (reduce->parsed()) {
      if (r_emit.empty() && !r_alpha) {
        std::cerr << "reduce: nothing to do; pass --emit and/or --alpha\n";
        return 1;
      }
      return cmd_reduce(r_graph, r_emit, r_alpha);
    }
    if (bench_cmd->parsed()) {
      auto cfg = load_bench_config(bench_config, bench_out);
      teamsel::bench::BenchResult result;
      if (bench_what == "table1")
        result = teamsel::bench::bench_table1(cfg);
      else if (bench_what == "table2")
        result = teamsel::bench::bench_table2(cfg);
      else
        throw std::invalid_argument("bench: expected table1 or table2");
      teamsel::bench::write_outputs(result, cfg, cfg.output_dir);
      return result.exit_code;
    }
    if (sweep_cmd->parsed()) {
      auto cfg = load_bench_config(sweep_config, sweep_out);
      teamsel::bench::BenchResult result;
      if (sweep_what == "size")
        result = teamsel::bench::sweep_team_size(cfg);
      else if (sweep_what == "profile")
        result = teamsel::bench::sweep_profile_size(cfg);
      else
        throw std::invalid_argument("sweep: expected size or profile");
      teamsel::bench::write_outputs(result, cfg, cfg.output_dir);
      return result.exit_code;
    }
    if (info->parsed()) {
      using teamsel::kernels::Backend;
      std::cout << "active: "
                << teamsel::kernels::backend_name(
                       teamsel::kernels::active_backend())
                << "\n";
      std::cout << "scalar: available\n";
      std::cout << "avx2: "
                << (teamsel::kernels::backend_available(Backend::avx2)
                        ? "available"
                        : "unavailable")
                << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
