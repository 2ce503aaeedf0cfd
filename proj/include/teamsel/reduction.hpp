#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "teamsel/model.hpp"

// Team-selection instances built from d-regular graphs. With k = |E| and
// z[i][l] = 1/sqrt(2) when vertex i is an endpoint of edge l (0 otherwise),
// the error rows satisfy <z_i, z_j> = deg/2, 1/2 or 0 for i = j, adjacent and
// non-adjacent pairs, so the Gram matrix equals A + D. For any indicator x of
// a vertex subset S, x^T Q x = 2 i(S) + d |S| with i(S) the number of edges
// inside S; the independence number is therefore the largest m whose size-m
// optimum equals d*m. Useful as a cross-validation oracle for the whole
// team-selection machinery.

namespace teamsel::reduction {

struct RegularGraph {
  std::size_t n_vertices = 0;
  std::size_t degree = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, lexicographic order

  /// Validates regularity, ordering, duplicates and self-loops.
  static RegularGraph make(std::size_t n, std::size_t degree,
                           std::vector<std::pair<int, int>> edges);
};

RegularGraph cycle(std::size_t n);            // C_n, n >= 3
RegularGraph complete(std::size_t n);         // K_n, n >= 2
RegularGraph petersen();
/// Circulant graph: i ~ i +- o (mod n) for each offset o.
RegularGraph circulant(std::size_t n, const std::vector<int>& offsets);

/// Edge-list file: first line `n d`, then one `u v` pair (0-based) per line.
RegularGraph load_edge_list(const std::filesystem::path& path);

ErrorMatrix instance_from_graph(const RegularGraph& g);

/// Reduced instance as a profile with all outcomes zero (forecasts = errors).
PredictionProfile profile_from_graph(const RegularGraph& g);

enum class Solver { exhaustive, tabu };

/// min over size-m subsets of x^T (A + D) x, evaluated through the
/// team-selection machinery as 2 m^2 f(S). The returned value is checked
/// against the edge-count identity 2 i(S) + d m for the minimizing subset.
double min_edges_value(const RegularGraph& g, std::size_t m,
                       Solver solver = Solver::exhaustive,
                       std::uint64_t seed = 0);

/// Largest m whose size-m optimum equals d*m. Exhaustive solver only.
std::size_t independence_number(const RegularGraph& g);

/// Edges of g with both endpoints in S.
std::size_t edges_inside(const RegularGraph& g, const std::vector<int>& s);

}  // namespace teamsel::reduction
