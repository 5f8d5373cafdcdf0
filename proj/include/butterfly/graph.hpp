#pragma once

#include <array>
#include <utility>
#include <vector>

#include "butterfly/common.hpp"

namespace butterfly {

enum class Color : int { Blue = 0, Red = 1 };

// Coupling graph with checkerboard coloring and a designated center qubit.
struct QubitGraph {
  int n_qubits = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<Color> coloring;                   // proper 2-coloring, qubit 0 blue
  int center = 0;
  std::vector<std::array<double, 2>> positions;  // optional, for documentation
};

// BFS 2-coloring with the lowest-index qubit of each component fixed to blue.
// Throws ValidationError on an odd cycle ("not bipartite").
std::vector<Color> checkerboard_coloring(int n_qubits,
                                         const std::vector<std::pair<int, int>>& edges);

// BFS hop counts from `from`; disconnected vertices get -1.
std::vector<int> graph_distance(const QubitGraph& g, int from);

// Minimal-eccentricity vertex, lowest index on ties.
int graph_center(int n_qubits, const std::vector<std::pair<int, int>>& edges);

// Validates (connected, bipartite, edge indices in range), computes the
// coloring, and picks the center automatically when `center` < 0.
QubitGraph make_graph(int n_qubits, std::vector<std::pair<int, int>> edges, int center = -1,
                      std::vector<std::array<double, 2>> positions = {});

}  // namespace butterfly
