#include "butterfly/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace butterfly {

namespace {

std::vector<std::vector<int>> adjacency(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw ValidationError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") out of range");
    if (a == b) throw ValidationError("self-loop at qubit " + std::to_string(a));
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

}  // namespace

std::vector<Color> checkerboard_coloring(int n, const std::vector<std::pair<int, int>>& edges) {
  const auto adj = adjacency(n, edges);
  std::vector<int> col(n, -1);
  for (int root = 0; root < n; ++root) {
    if (col[root] >= 0) continue;
    col[root] = 0;  // lowest index of the component is blue
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int w : adj[u]) {
        if (col[w] < 0) {
          col[w] = 1 - col[u];
          q.push(w);
        } else if (col[w] == col[u]) {
          throw ValidationError("graph is not bipartite (odd cycle through qubit " +
                                std::to_string(w) + ")");
        }
      }
    }
  }
  std::vector<Color> out(n);
  for (int i = 0; i < n; ++i) out[i] = col[i] ? Color::Red : Color::Blue;
  return out;
}

std::vector<int> graph_distance(const QubitGraph& g, int from) {
  if (from < 0 || from >= g.n_qubits) throw ValidationError("source qubit out of range");
  const auto adj = adjacency(g.n_qubits, g.edges);
  std::vector<int> d(g.n_qubits, -1);
  d[from] = 0;
  std::queue<int> q;
  q.push(from);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int w : adj[u])
      if (d[w] < 0) {
        d[w] = d[u] + 1;
        q.push(w);
      }
  }
  return d;
}

int graph_center(int n, const std::vector<std::pair<int, int>>& edges) {
  QubitGraph tmp;
  tmp.n_qubits = n;
  tmp.edges = edges;
  int best = -1, best_ecc = 0;
  for (int v = 0; v < n; ++v) {
    const auto d = graph_distance(tmp, v);
    int ecc = 0;
    for (int x : d) {
      if (x < 0) throw ValidationError("graph is not connected");
      ecc = std::max(ecc, x);
    }
    if (best < 0 || ecc < best_ecc) {
      best = v;
      best_ecc = ecc;
    }
  }
  return best;
}

QubitGraph make_graph(int n, std::vector<std::pair<int, int>> edges, int center,
                      std::vector<std::array<double, 2>> positions) {
  if (n < 1) throw ValidationError("graph needs at least one qubit");
  QubitGraph g;
  g.n_qubits = n;
  g.edges = std::move(edges);
  g.coloring = checkerboard_coloring(n, g.edges);
  if (n > 1) {
    const auto d = graph_distance(g, 0);
    for (int x : d)
      if (x < 0) throw ValidationError("graph is not connected");
  }
  g.center = center >= 0 ? center : graph_center(n, g.edges);
  if (g.center >= n) throw ValidationError("center qubit out of range");
  g.positions = std::move(positions);
  return g;
}

}  // namespace butterfly
