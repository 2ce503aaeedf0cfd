#include "teamsel/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "teamsel/context.hpp"
#include "teamsel/heuristics.hpp"
#include "teamsel/profile_io.hpp"
#include "teamsel/rng.hpp"
#include "teamsel/subset_enum.hpp"
#include "teamsel/tabu.hpp"

namespace teamsel::bench {

namespace {

struct AlgoName {
  Algorithm algo;
  const char* name;
};

constexpr AlgoName kNames[] = {
    {Algorithm::tabu, "tabu"},
    {Algorithm::best_team, "best-team"},
    {Algorithm::random_rounding, "random-rounding"},
    {Algorithm::max_weights, "max-weights"},
    {Algorithm::min_effect, "min-effect"},
    {Algorithm::best_pairs, "best-pairs"},
    {Algorithm::remove_least_weights, "remove-lw"},
    {Algorithm::minimum_error, "min-error"},
};

}  // namespace

const char* algorithm_name(Algorithm a) {
  for (const auto& e : kNames)
    if (e.algo == a) return e.name;
  return "?";
}

Algorithm algorithm_from_name(const std::string& name) {
  for (const auto& e : kNames)
    if (name == e.name) return e.algo;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::vector<Algorithm> all_algorithms() {
  std::vector<Algorithm> out;
  for (const auto& e : kNames) out.push_back(e.algo);
  return out;
}

BenchConfig config_from_json(const std::string& text) {
  BenchConfig cfg;
  const auto j = nlohmann::json::parse(text);
  if (j.contains("scenarios")) {
    cfg.scenario_kinds.clear();
    for (const auto& s : j["scenarios"])
      cfg.scenario_kinds.push_back(
          scenarios::kind_from_name(s.get<std::string>()));
  }
  if (j.contains("trials")) cfg.trials = j["trials"].get<std::size_t>();
  if (j.contains("n_experts")) cfg.n_experts = j["n_experts"].get<std::size_t>();
  if (j.contains("team_sizes"))
    cfg.team_sizes = j["team_sizes"].get<std::vector<std::size_t>>();
  if (j.contains("k_train")) cfg.k_train = j["k_train"].get<std::size_t>();
  if (j.contains("algorithms")) {
    cfg.algorithms.clear();
    for (const auto& a : j["algorithms"])
      cfg.algorithms.push_back(algorithm_from_name(a.get<std::string>()));
  }
  if (j.contains("master_seed"))
    cfg.master_seed = j["master_seed"].get<std::uint64_t>();
  if (j.contains("outcome_sigma"))
    cfg.outcome_sigma = j["outcome_sigma"].get<double>();
  if (j.contains("output_dir"))
    cfg.output_dir = j["output_dir"].get<std::string>();
  if (j.contains("pool_sizes"))
    cfg.pool_sizes = j["pool_sizes"].get<std::vector<std::size_t>>();
  if (j.contains("profile_sizes"))
    cfg.profile_sizes = j["profile_sizes"].get<std::vector<std::size_t>>();
  if (j.contains("test_rounds"))
    cfg.test_rounds = j["test_rounds"].get<std::size_t>();

  if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  for (std::size_t m : cfg.team_sizes)
    if (m < 1 || m > cfg.n_experts)
      throw std::invalid_argument("config: team size out of [1, n_experts]");
  return cfg;
}

std::string config_to_json(const BenchConfig& cfg) {
  nlohmann::json j;
  auto kinds = nlohmann::json::array();
  for (auto k : cfg.scenario_kinds) kinds.push_back(scenarios::kind_name(k));
  j["scenarios"] = std::move(kinds);
  j["trials"] = cfg.trials;
  j["n_experts"] = cfg.n_experts;
  j["team_sizes"] = cfg.team_sizes;
  j["k_train"] = cfg.k_train;
  auto algos = nlohmann::json::array();
  for (auto a : cfg.algorithms) algos.push_back(algorithm_name(a));
  j["algorithms"] = std::move(algos);
  j["master_seed"] = cfg.master_seed;
  j["outcome_sigma"] = cfg.outcome_sigma;
  j["output_dir"] = cfg.output_dir;
  j["pool_sizes"] = cfg.pool_sizes;
  j["profile_sizes"] = cfg.profile_sizes;
  j["test_rounds"] = cfg.test_rounds;
  return j.dump(2) + "\n";
}

namespace {

std::uint64_t trial_seed(const BenchConfig& cfg, const std::string& tag,
                         std::size_t trial) {
  return rng::derive(cfg.master_seed, tag, trial).next_u64();
}

// Each algorithm is charged what its own signature implies: tabu pays for
// the relaxation it initializes from, random-rounding and max-weights take
// the precomputed relaxed solution, the rest build what they use.
Team run_algorithm(const SolveContext& ctx, Algorithm algo, std::size_t m,
                   std::uint64_t seed) {
  switch (algo) {
    case Algorithm::tabu: {
      tabu::TabuParams params;
      params.seed = seed;
      return tabu::tabu_search(ctx.profile(), m, params);
    }
    case Algorithm::best_team:
      return heuristics::best_team(ctx, m);
    case Algorithm::random_rounding: {
      heuristics::HeuristicConfig hcfg;
      hcfg.seed = seed;
      return heuristics::random_rounding(ctx, m, hcfg);
    }
    case Algorithm::max_weights:
      return heuristics::max_weights(ctx, m);
    case Algorithm::min_effect:
      return heuristics::min_effect(ctx, m);
    case Algorithm::best_pairs:
      return heuristics::best_pairs(ctx, m);
    case Algorithm::remove_least_weights:
      return heuristics::remove_least_weights(ctx, m);
    case Algorithm::minimum_error:
      return heuristics::minimum_error(ctx, m);
  }
  throw std::logic_error("unreachable");
}

/// Median-of-3 wall time around the solve call only.
std::pair<Team, double> timed_run(const SolveContext& ctx, Algorithm algo,
                                  std::size_t m, std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  double times[3];
  Team team;
  for (int rep = 0; rep < 3; ++rep) {
    const auto start = clock::now();
    team = run_algorithm(ctx, algo, m, seed);
    const auto stop = clock::now();
    times[rep] =
        std::chrono::duration<double, std::milli>(stop - start).count();
  }
  std::sort(std::begin(times), std::end(times));
  return {std::move(team), times[1]};
}

std::string rows_to_csv(const std::vector<BenchRow>& rows) {
  std::string out = "scenario,algorithm,m,trial,sse,gap_to_best,runtime_ms\n";
  for (const auto& r : rows) {
    out += r.scenario;
    out += ",";
    out += r.algorithm;
    out += ",";
    out += std::to_string(r.m);
    out += ",";
    out += std::to_string(r.trial);
    out += ",";
    out += r.failed ? "nan" : format_double(r.sse);
    out += ",";
    out += r.failed ? "nan" : format_double(r.gap_to_best);
    out += ",";
    out += format_double(r.runtime_ms);
    out += "\n";
  }
  return out;
}

struct Stats {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // Welford

  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }
  double stderr_mean() const {
    if (count < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(count - 1) /
                     static_cast<double>(count));
  }
};

double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

BenchResult bench_table1(const BenchConfig& cfg) {
  BenchResult result;
  std::vector<BenchRow> rows;

  // Aggregates keyed in first-seen order.
  std::vector<std::string> agg_order;
  std::map<std::string, Stats> gap_stats;
  std::map<std::string, Stats> sse_stats;
  std::map<std::string, std::size_t> failures;
  std::vector<std::string> agg_m_order;
  std::map<std::string, Stats> gap_by_m;

  for (auto kind : cfg.scenario_kinds) {
    const std::string scen = scenarios::kind_name(kind);
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      scenarios::ScenarioSpec spec;
      spec.kind = kind;
      spec.n_experts = cfg.n_experts;
      spec.n_rounds = cfg.k_train;
      spec.outcome_sigma = cfg.outcome_sigma;
      spec.seed = trial_seed(cfg, "gen/" + scen, trial);
      const SolveContext ctx(scenarios::generate(spec).first);

      // Oracle values per size, needed for every gap in this trial.
      std::map<std::size_t, double> best_sse;
      for (std::size_t m : cfg.team_sizes)
        best_sse[m] = heuristics::best_team(ctx, m).sse;

      for (auto algo : cfg.algorithms) {
        const std::string name = algorithm_name(algo);
        const std::uint64_t seed =
            trial_seed(cfg, "alg/" + scen + "/" + name, trial);
        for (std::size_t m : cfg.team_sizes) {
          BenchRow row;
          row.scenario = scen;
          row.algorithm = name;
          row.m = m;
          row.trial = trial;
          try {
            auto [team, ms] = timed_run(ctx, algo, m, seed);
            row.sse = team.sse;
            row.gap_to_best = team.sse - best_sse[m];
            row.runtime_ms = ms;
          } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
            result.exit_code = 2;
          }
          const std::string key = scen + "," + name;
          if (gap_stats.find(key) == gap_stats.end()) agg_order.push_back(key);
          if (row.failed) {
            failures[key] += 1;
          } else {
            gap_stats[key].add(row.gap_to_best);
            sse_stats[key].add(row.sse);
            const std::string mkey = key + "," + std::to_string(m);
            if (gap_by_m.find(mkey) == gap_by_m.end())
              agg_m_order.push_back(mkey);
            gap_by_m[mkey].add(row.gap_to_best);
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }

  result.rows_csv = rows_to_csv(rows);

  std::string summary =
      "scenario,algorithm,mean_gap,stderr_gap,mean_sse,cells,failures\n";
  for (const auto& key : agg_order) {
    const auto& g = gap_stats[key];
    summary += key + "," + format_double(g.mean) + "," +
               format_double(g.stderr_mean()) + "," +
               format_double(sse_stats[key].mean) + "," +
               std::to_string(g.count) + "," +
               std::to_string(failures.count(key) ? failures[key] : 0) + "\n";
  }
  result.summary_csv = std::move(summary);

  std::string by_m = "scenario,algorithm,m,mean_gap,stderr_gap,cells\n";
  for (const auto& key : agg_m_order) {
    const auto& g = gap_by_m[key];
    by_m += key + "," + format_double(g.mean) + "," +
            format_double(g.stderr_mean()) + "," + std::to_string(g.count) +
            "\n";
  }
  result.summary_by_m_csv = std::move(by_m);
  return result;
}

BenchResult bench_table2(const BenchConfig& cfg) {
  BenchResult result;
  std::vector<BenchRow> rows;
  constexpr std::size_t kTeamSize = 8;
  const auto kind = scenarios::Kind::normal2;
  const std::string scen = scenarios::kind_name(kind);

  std::map<std::string, std::vector<double>> runtimes;
  std::vector<std::string> order;

  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    scenarios::ScenarioSpec spec;
    spec.kind = kind;
    spec.n_experts = cfg.n_experts;
    spec.n_rounds = cfg.k_train;
    spec.outcome_sigma = cfg.outcome_sigma;
    spec.seed = trial_seed(cfg, "gen/" + scen, trial);
    const SolveContext ctx(scenarios::generate(spec).first);
    const double best = heuristics::best_team(ctx, kTeamSize).sse;

    for (auto algo : cfg.algorithms) {
      const std::string name = algorithm_name(algo);
      const std::uint64_t seed =
          trial_seed(cfg, "alg/" + scen + "/" + name, trial);
      BenchRow row;
      row.scenario = scen;
      row.algorithm = name;
      row.m = kTeamSize;
      row.trial = trial;
      try {
        auto [team, ms] = timed_run(ctx, algo, kTeamSize, seed);
        row.sse = team.sse;
        row.gap_to_best = team.sse - best;
        row.runtime_ms = ms;
        if (runtimes.find(name) == runtimes.end()) order.push_back(name);
        runtimes[name].push_back(ms);
      } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
        result.exit_code = 2;
      }
      rows.push_back(std::move(row));
    }
  }

  result.rows_csv = rows_to_csv(rows);
  std::string summary =
      "algorithm,mean_runtime_ms,median_runtime_ms,trials\n";
  for (const auto& name : order) {
    Stats st;
    for (double t : runtimes[name]) st.add(t);
    summary += name + "," + format_double(st.mean) + "," +
               format_double(median_of(runtimes[name])) + "," +
               std::to_string(st.count) + "\n";
  }
  result.summary_csv = std::move(summary);
  return result;
}

BenchResult sweep_team_size(const BenchConfig& cfg) {
  BenchResult result;
  std::string rows = "scenario,pool,m,trial,sse\n";
  std::vector<std::string> order;
  std::map<std::string, Stats> agg;

  for (auto kind : cfg.scenario_kinds) {
    const std::string scen = scenarios::kind_name(kind);
    for (std::size_t pool : cfg.pool_sizes) {
      for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        scenarios::ScenarioSpec spec;
        spec.kind = kind;
        spec.n_experts = pool;
        spec.n_rounds = cfg.k_train;
        spec.outcome_sigma = cfg.outcome_sigma;
        spec.seed =
            trial_seed(cfg, "gen/" + scen + "/pool" + std::to_string(pool), trial);
        const auto profile = scenarios::generate(spec).first;
        const auto best = best_teams_by_size(build_error_matrix(profile));
        for (std::size_t m = 1; m <= pool; ++m) {
          rows += scen + "," + std::to_string(pool) + "," + std::to_string(m) +
                  "," + std::to_string(trial) + "," +
                  format_double(best.sse[m - 1]) + "\n";
          const std::string key =
              scen + "," + std::to_string(pool) + "," + std::to_string(m);
          if (agg.find(key) == agg.end()) order.push_back(key);
          agg[key].add(best.sse[m - 1]);
        }
      }
    }
  }

  result.rows_csv = std::move(rows);
  std::string summary = "scenario,pool,m,mean_sse,stderr_sse,trials\n";
  for (const auto& key : order) {
    const auto& s = agg[key];
    summary += key + "," + format_double(s.mean) + "," +
               format_double(s.stderr_mean()) + "," + std::to_string(s.count) +
               "\n";
  }
  result.summary_csv = std::move(summary);
  return result;
}

BenchResult sweep_profile_size(const BenchConfig& cfg) {
  BenchResult result;
  if (cfg.profile_sizes.empty())
    throw std::invalid_argument("sweep: profile_sizes empty");
  const std::size_t k_max =
      *std::max_element(cfg.profile_sizes.begin(), cfg.profile_sizes.end());

  std::string rows = "scenario,k,trial,m_selected,train_sse,test_sse\n";
  std::vector<std::string> order;
  std::map<std::string, Stats> agg;

  for (auto kind : cfg.scenario_kinds) {
    const std::string scen = scenarios::kind_name(kind);
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      scenarios::ScenarioSpec spec;
      spec.kind = kind;
      spec.n_experts = cfg.n_experts;
      spec.n_rounds = k_max + cfg.test_rounds;
      spec.outcome_sigma = cfg.outcome_sigma;
      spec.seed = trial_seed(cfg, "gen/" + scen, trial);
      const auto profile = scenarios::generate(spec).first;

      for (std::size_t k : cfg.profile_sizes) {
        const auto [train, test] =
            scenarios::split_profile(profile, k, cfg.test_rounds);
        const auto best = best_teams_by_size(build_error_matrix(train));
        // Best team over all sizes; ties to the smaller size (and the DFS
        // already keeps the lexicographically smallest set per size).
        std::size_t pick = 0;
        for (std::size_t m = 1; m < best.sse.size(); ++m)
          if (best.sse[m] < best.sse[pick]) pick = m;
        const double held = sse_team(test, best.members[pick]);
        rows += scen + "," + std::to_string(k) + "," + std::to_string(trial) +
                "," + std::to_string(pick + 1) + "," +
                format_double(best.sse[pick]) + "," + format_double(held) +
                "\n";
        const std::string key = scen + "," + std::to_string(k);
        if (agg.find(key) == agg.end()) order.push_back(key);
        agg[key].add(held);
      }
    }
  }

  result.rows_csv = std::move(rows);
  std::string summary = "scenario,k,mean_test_sse,stderr_test_sse,trials\n";
  for (const auto& key : order) {
    const auto& s = agg[key];
    summary += key + "," + format_double(s.mean) + "," +
               format_double(s.stderr_mean()) + "," + std::to_string(s.count) +
               "\n";
  }
  result.summary_csv = std::move(summary);
  return result;
}

void write_outputs(const BenchResult& result, const BenchConfig& cfg,
                   const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream out(out_dir / name, std::ios::binary);
    if (!out)
      throw std::runtime_error((out_dir / name).string() + ": cannot write");
    out << text;
  };
  write("rows.csv", result.rows_csv);
  write("summary.csv", result.summary_csv);
  if (!result.summary_by_m_csv.empty())
    write("summary_by_m.csv", result.summary_by_m_csv);
  write("config.echo.json", config_to_json(cfg));
}

}  // namespace teamsel::bench
