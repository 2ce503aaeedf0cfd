#include "teamsel/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "teamsel/heuristics.hpp"
#include "teamsel/tabu.hpp"

namespace teamsel::reduction {

RegularGraph RegularGraph::make(std::size_t n, std::size_t degree,
                                std::vector<std::pair<int, int>> edges) {
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
    if (u == v) throw std::invalid_argument("graph: self-loop");
    if (u < 0 || static_cast<std::size_t>(v) >= n)
      throw std::invalid_argument("graph: vertex out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("graph: duplicate edge");

  std::vector<std::size_t> deg(n, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  for (std::size_t i = 0; i < n; ++i)
    if (deg[i] != degree)
      throw std::invalid_argument("graph: vertex " + std::to_string(i) +
                                  " has degree " + std::to_string(deg[i]) +
                                  ", expected " + std::to_string(degree));
  if (edges.size() * 2 != n * degree)
    throw std::invalid_argument("graph: edge count inconsistent with degree");
  return RegularGraph{n, degree, std::move(edges)};
}

RegularGraph cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle: n must be >= 3");
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < n; ++i)
    edges.emplace_back(static_cast<int>(i), static_cast<int>((i + 1) % n));
  return RegularGraph::make(n, 2, std::move(edges));
}

RegularGraph complete(std::size_t n) {
  if (n < 2) throw std::invalid_argument("complete: n must be >= 2");
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return RegularGraph::make(n, n - 1, std::move(edges));
}

RegularGraph petersen() {
  // Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    edges.emplace_back(i, i + 5);
  }
  return RegularGraph::make(10, 3, std::move(edges));
}

RegularGraph circulant(std::size_t n, const std::vector<int>& offsets) {
  if (n < 3) throw std::invalid_argument("circulant: n must be >= 3");
  std::vector<std::pair<int, int>> edges;
  std::size_t degree = 0;
  for (int o : offsets) {
    if (o <= 0 || static_cast<std::size_t>(o) > n / 2)
      throw std::invalid_argument("circulant: offsets must lie in [1, n/2]");
    if (2 * static_cast<std::size_t>(o) == n) {
      degree += 1;  // antipodal offset contributes one edge per vertex
      for (std::size_t i = 0; i < n / 2; ++i)
        edges.emplace_back(static_cast<int>(i), static_cast<int>(i + n / 2));
    } else {
      degree += 2;
      for (std::size_t i = 0; i < n; ++i)
        edges.emplace_back(static_cast<int>(i),
                           static_cast<int>((i + static_cast<std::size_t>(o)) % n));
    }
  }
  return RegularGraph::make(n, degree, std::move(edges));
}

RegularGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open");
  std::size_t n = 0;
  std::size_t d = 0;
  if (!(in >> n >> d))
    throw std::runtime_error(path.string() + ": expected 'n d' header");
  std::vector<std::pair<int, int>> edges;
  int u = 0;
  int v = 0;
  while (in >> u >> v) edges.emplace_back(u, v);
  if (!in.eof())
    throw std::runtime_error(path.string() + ": malformed edge line");
  return RegularGraph::make(n, d, std::move(edges));
}

ErrorMatrix instance_from_graph(const RegularGraph& g) {
  const std::size_t k = g.edges.size();
  if (k == 0) throw std::invalid_argument("instance_from_graph: no edges");
  const double h = 1.0 / std::sqrt(2.0);
  Matrix z(g.n_vertices, k);
  for (std::size_t l = 0; l < k; ++l) {
    z(g.edges[l].first, l) = h;
    z(g.edges[l].second, l) = h;
  }
  return ErrorMatrix(std::move(z));
}

PredictionProfile profile_from_graph(const RegularGraph& g) {
  const ErrorMatrix z = instance_from_graph(g);
  return PredictionProfile(z.values(),
                           std::vector<double>(z.n_rounds(), 0.0));
}

std::size_t edges_inside(const RegularGraph& g, const std::vector<int>& s) {
  std::vector<char> in(g.n_vertices, 0);
  for (int i : s) in[i] = 1;
  std::size_t count = 0;
  for (const auto& [u, v] : g.edges)
    if (in[u] && in[v]) ++count;
  return count;
}

double min_edges_value(const RegularGraph& g, std::size_t m, Solver solver,
                       std::uint64_t seed) {
  if (m < 1 || m > g.n_vertices)
    throw std::invalid_argument("min_edges_value: m out of range");
  const PredictionProfile profile = profile_from_graph(g);
  Team team;
  if (solver == Solver::exhaustive) {
    team = heuristics::best_team(profile, m);
  } else {
    tabu::TabuParams params;
    params.seed = seed;
    team = tabu::tabu_search(profile, m, params);
  }
  // x^T Q x for the indicator x of S equals 2 m^2 f(S).
  const double md = static_cast<double>(m);
  const double value = 2.0 * md * md * team.sse;
  const double identity =
      2.0 * static_cast<double>(edges_inside(g, team.members)) +
      static_cast<double>(g.degree) * md;
  if (std::abs(value - identity) > 1e-6)
    throw std::runtime_error("min_edges_value: edge-count identity violated");
  return value;
}

std::size_t independence_number(const RegularGraph& g) {
  std::size_t alpha = 0;
  for (std::size_t m = 1; m <= g.n_vertices; ++m) {
    const double value = min_edges_value(g, m, Solver::exhaustive);
    const double dm = static_cast<double>(g.degree) * static_cast<double>(m);
    if (std::abs(value - dm) <= 1e-6) alpha = m;
  }
  return alpha;
}

}  // namespace teamsel::reduction
