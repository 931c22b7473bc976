#pragma once

#include <limits>
#include <vector>

#include "latdist/errors.hpp"

namespace latdist {

// Directed edge with a positive length constant; vertices are 1-based.
struct Arrow {
  int from = 0;
  int to = 0;
  double epsilon = 1.0;
};

// Finite digraph with positive arrow weights. No self-loops, no duplicate
// arrows; opposite arrows between the same vertices are allowed.
class WeightedDigraph {
 public:
  WeightedDigraph(int n_vertices, std::vector<Arrow> arrows);

  int n_vertices() const { return n_vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

 private:
  int n_vertices_ = 0;
  std::vector<Arrow> arrows_;
};

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// ||df|| = sup over arrows (k -> l) of |f(k) - f(l)| / epsilon_{kl}.
double df_norm(const WeightedDigraph& g, const std::vector<double>& f);

// d(p,q) = sup{|f(p) - f(q)| : ||df|| <= 1}; equals the shortest-path
// distance in the orientation-forgotten graph with edge lengths epsilon,
// kUnreachable across weakly connected components.
double graph_distance(const WeightedDigraph& g, int p, int q);

// Single-source shortest distances on the symmetrized graph; unreachable
// vertices get kUnreachable.
std::vector<double> shortest_path_oracle(const WeightedDigraph& g, int p);

}  // namespace latdist
