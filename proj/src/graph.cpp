#include "latdist/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <string>
#include <utility>

namespace latdist {

WeightedDigraph::WeightedDigraph(int n_vertices, std::vector<Arrow> arrows)
    : n_vertices_(n_vertices), arrows_(std::move(arrows)) {
  if (n_vertices_ < 1) throw InvariantViolationError("graph needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (const Arrow& a : arrows_) {
    if (a.from < 1 || a.from > n_vertices_ || a.to < 1 || a.to > n_vertices_)
      throw InvariantViolationError("arrow endpoint outside 1.." + std::to_string(n_vertices_));
    if (a.from == a.to)
      throw InvariantViolationError("self-loop at vertex " + std::to_string(a.from));
    if (!(a.epsilon > 0.0) || !std::isfinite(a.epsilon))
      throw InvariantViolationError("arrow weight must be positive and finite");
    if (!seen.insert({a.from, a.to}).second)
      throw InvariantViolationError("duplicate arrow " + std::to_string(a.from) + " -> " +
                                    std::to_string(a.to));
  }
}

double df_norm(const WeightedDigraph& g, const std::vector<double>& f) {
  if (g.arrows().empty()) throw NoArrowsError("df_norm: graph has no arrows");
  if (f.size() != static_cast<std::size_t>(g.n_vertices()))
    throw LengthMismatchError("df_norm: function length differs from vertex count");
  double sup = 0.0;
  for (const Arrow& a : g.arrows())
    sup = std::max(sup, std::abs(f[a.from - 1] - f[a.to - 1]) / a.epsilon);
  return sup;
}

std::vector<double> shortest_path_oracle(const WeightedDigraph& g, int p) {
  const int n = g.n_vertices();
  if (p < 1 || p > n)
    throw IndexOutOfRangeError("vertex index " + std::to_string(p) + " outside 1.." +
                               std::to_string(n));

  // Constraints |f(k) - f(l)| <= epsilon are orientation-blind, so the sup
  // distance is plain Dijkstra on the symmetrized graph.
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const Arrow& a : g.arrows()) {
    adj[a.from - 1].push_back({a.to - 1, a.epsilon});
    adj[a.to - 1].push_back({a.from - 1, a.epsilon});
  }

  std::vector<double> dist(n, kUnreachable);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[p - 1] = 0.0;
  heap.push({0.0, p - 1});
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (const auto& [w, len] : adj[v]) {
      if (d + len < dist[w]) {
        dist[w] = d + len;
        heap.push({dist[w], w});
      }
    }
  }
  return dist;
}

double graph_distance(const WeightedDigraph& g, int p, int q) {
  const int n = g.n_vertices();
  if (q < 1 || q > n)
    throw IndexOutOfRangeError("vertex index " + std::to_string(q) + " outside 1.." +
                               std::to_string(n));
  return shortest_path_oracle(g, p)[q - 1];
}

}  // namespace latdist
