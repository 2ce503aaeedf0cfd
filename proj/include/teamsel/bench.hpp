#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "teamsel/scenarios.hpp"

// Seeded batch experiments emitting CSV: the algorithm-quality table
// (gap to the exhaustive best team), the runtime table, and the two sweeps
// (team size, profile size). Per-trial generation seeds depend only on
// (master_seed, scenario, trial) and per-cell algorithm seeds only on
// (master_seed, scenario, algorithm, trial), so adding algorithms or
// reordering them never perturbs the generated data. All emitted columns are
// byte-reproducible for a fixed build except runtime_ms, which is wall-clock.

namespace teamsel::bench {

enum class Algorithm {
  tabu,
  best_team,
  random_rounding,
  max_weights,
  min_effect,
  best_pairs,
  remove_least_weights,
  minimum_error,
};

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);
std::vector<Algorithm> all_algorithms();

struct BenchConfig {
  std::vector<scenarios::Kind> scenario_kinds = {
      scenarios::Kind::normal1, scenarios::Kind::normal2,
      scenarios::Kind::normal3, scenarios::Kind::exp};
  std::size_t trials = 100;
  std::size_t n_experts = 15;
  std::vector<std::size_t> team_sizes = {2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::size_t k_train = 30;
  std::vector<Algorithm> algorithms = all_algorithms();
  std::uint64_t master_seed = 0;
  double outcome_sigma = 1.0;
  std::string output_dir = "bench-out";

  // Sweep-specific knobs.
  std::vector<std::size_t> pool_sizes = {12, 13, 14, 15};
  std::vector<std::size_t> profile_sizes = {5,  10, 15, 20, 25, 30, 35, 40,
                                            45, 50, 55, 60, 65, 70, 75, 80,
                                            85, 90, 95, 100};
  std::size_t test_rounds = 3;
};

/// Partial override: any key present in the JSON object replaces the default.
BenchConfig config_from_json(const std::string& text);
std::string config_to_json(const BenchConfig& cfg);

struct BenchRow {
  std::string scenario;
  std::string algorithm;
  std::size_t m = 0;
  std::size_t trial = 0;
  double sse = 0.0;
  double gap_to_best = 0.0;
  double runtime_ms = 0.0;
  bool failed = false;
  std::string error;
};

struct BenchResult {
  std::string rows_csv;
  std::string summary_csv;
  std::string summary_by_m_csv;  // table1 only, empty elsewhere
  int exit_code = 0;             // 2 when any row failed
};

/// Quality table: every algorithm at every configured team size, gap to the
/// exhaustive optimum, averaged per (scenario, algorithm).
BenchResult bench_table1(const BenchConfig& cfg);

/// Runtime table at m = 8 on normal2: per-algorithm mean and median of the
/// per-solve median-of-3 wall time.
BenchResult bench_table2(const BenchConfig& cfg);

/// Best-team SSE as a function of team size for each pool size.
BenchResult sweep_team_size(const BenchConfig& cfg);

/// Held-out SSE (next test_rounds rounds) of the best team selected on the
/// first k rounds, for each k in profile_sizes.
BenchResult sweep_profile_size(const BenchConfig& cfg);

/// Writes rows.csv, summary.csv, summary_by_m.csv (when present) and
/// config.echo.json under out_dir.
void write_outputs(const BenchResult& result, const BenchConfig& cfg,
                   const std::filesystem::path& out_dir);

}  // namespace teamsel::bench
