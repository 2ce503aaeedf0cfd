#include "teamsel/scenarios.hpp"

#include <stdexcept>

#include "teamsel/rng.hpp"

namespace teamsel::scenarios {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::normal1: return "normal1";
    case Kind::normal2: return "normal2";
    case Kind::normal3: return "normal3";
    case Kind::exp: return "exp";
  }
  return "?";
}

Kind kind_from_name(const std::string& name) {
  if (name == "normal1") return Kind::normal1;
  if (name == "normal2") return Kind::normal2;
  if (name == "normal3") return Kind::normal3;
  if (name == "exp") return Kind::exp;
  throw std::invalid_argument("unknown scenario: " + name);
}

std::pair<PredictionProfile, ExpertPopulation> generate(const ScenarioSpec& spec) {
  if (spec.n_experts < 1 || spec.n_rounds < 1)
    throw std::invalid_argument("scenario: counts must be >= 1");
  if (!(spec.outcome_sigma > 0.0))
    throw std::invalid_argument("scenario: outcome_sigma must be positive");
  const std::size_t n = spec.n_experts;
  const std::size_t k = spec.n_rounds;

  ExpertPopulation pop;
  pop.kind = spec.kind;
  auto pop_rng = rng::derive(spec.seed, "population");
  for (std::size_t i = 0; i < n; ++i) {
    switch (spec.kind) {
      case Kind::normal1:
        pop.means.push_back(10.0);
        pop.sigmas.push_back(pop_rng.next_uniform(1.0, 2.0));
        break;
      case Kind::normal2:
        pop.means.push_back(10.0);
        pop.sigmas.push_back(pop_rng.next_uniform(1.0, 7.0));
        break;
      case Kind::normal3:
        pop.means.push_back(pop_rng.next_uniform(8.0, 12.0));
        pop.sigmas.push_back(pop_rng.next_uniform(1.0, 2.0));
        break;
      case Kind::exp:
        pop.means.push_back(10.0);
        break;
    }
  }

  std::vector<double> outcomes(k);
  auto out_rng = rng::derive(spec.seed, "outcomes");
  for (std::size_t t = 0; t < k; ++t)
    outcomes[t] = spec.kind == Kind::exp
                      ? out_rng.next_exponential(10.0)
                      : out_rng.next_normal(10.0, spec.outcome_sigma);

  Matrix forecasts(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    auto fc_rng = rng::derive(spec.seed, "forecasts", i);
    double* row = forecasts.row(i);
    for (std::size_t t = 0; t < k; ++t)
      row[t] = spec.kind == Kind::exp
                   ? fc_rng.next_exponential(pop.means[i])
                   : fc_rng.next_normal(pop.means[i], pop.sigmas[i]);
  }

  return {PredictionProfile(std::move(forecasts), std::move(outcomes)),
          std::move(pop)};
}

std::pair<PredictionProfile, PredictionProfile> split_profile(
    const PredictionProfile& profile, std::size_t train_k, std::size_t test_k) {
  if (train_k < 1 || test_k < 1)
    throw std::invalid_argument("split_profile: both parts must be non-empty");
  if (train_k + test_k > profile.n_rounds())
    throw std::invalid_argument("split_profile: not enough rounds");
  const std::size_t n = profile.n_experts();

  auto slice = [&](std::size_t from, std::size_t len) {
    Matrix fc(n, len);
    std::vector<double> out(len);
    for (std::size_t t = 0; t < len; ++t) {
      out[t] = profile.outcomes()[from + t];
      for (std::size_t i = 0; i < n; ++i) fc(i, t) = profile.forecasts()(i, from + t);
    }
    return PredictionProfile(std::move(fc), std::move(out), profile.labels());
  };

  return {slice(0, train_k), slice(train_k, test_k)};
}

}  // namespace teamsel::scenarios
