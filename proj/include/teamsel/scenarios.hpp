#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "teamsel/model.hpp"

// Synthetic expert populations. Four kinds, varying calibration and
// informativeness:
//
//   normal1  outcome N(10, outcome_sigma); expert i draws N(10, s_i),
//            s_i ~ U[1,2]            (calibrated, informative)
//   normal2  like normal1 with s_i ~ U[1,7]   (calibrated, less informative)
//   normal3  expert means mu_i ~ U[8,12], s_i ~ U[1,2]   (miscalibrated)
//   exp      outcome and every forecast Exp(mean 10)
//
// Randomness is consumed in a documented order on split streams so any piece
// is reproducible on its own: stream (seed,"population") draws per-expert
// parameters in index order (mean first where applicable, then sigma);
// stream (seed,"outcomes") draws the k outcomes; stream (seed,"forecasts",i)
// draws expert i's forecasts in round order.

namespace teamsel::scenarios {

enum class Kind { normal1, normal2, normal3, exp };

const char* kind_name(Kind k);
Kind kind_from_name(const std::string& name);  // throws on unknown names

struct ScenarioSpec {
  Kind kind = Kind::normal1;
  std::size_t n_experts = 15;
  std::size_t n_rounds = 30;
  std::uint64_t seed = 0;
  double outcome_sigma = 1.0;  // normal kinds only
};

struct ExpertPopulation {
  Kind kind = Kind::normal1;
  std::vector<double> means;
  std::vector<double> sigmas;  // empty for exp
};

std::pair<PredictionProfile, ExpertPopulation> generate(const ScenarioSpec& spec);

/// Chronological split: the first train_k rounds, then the next test_k.
/// Both parts must be non-empty.
std::pair<PredictionProfile, PredictionProfile> split_profile(
    const PredictionProfile& profile, std::size_t train_k, std::size_t test_k);

}  // namespace teamsel::scenarios
