#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "latdist/graph.hpp"
#include "latdist/numerics.hpp"
#include "latdist/triple.hpp"

namespace testutil {

using latdist::Complex;
using latdist::ComplexMatrix;
using latdist::ComplexVector;

struct Rng {
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  std::mt19937_64 gen;

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  Complex cuniform() { return Complex{uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

  ComplexMatrix matrix(std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = cuniform();
    return m;
  }

  ComplexMatrix hermitian(std::size_t n) {
    ComplexMatrix m = matrix(n, n);
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return h;
  }

  // Gram-Schmidt on a random complex matrix.
  ComplexMatrix unitary(std::size_t n) {
    ComplexMatrix m = matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t prev = 0; prev < j; ++prev) {
        Complex dot{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) dot += std::conj(m(i, prev)) * m(i, j);
        for (std::size_t i = 0; i < n; ++i) m(i, j) -= dot * m(i, prev);
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm += std::norm(m(i, j));
      norm = std::sqrt(norm);
      for (std::size_t i = 0; i < n; ++i) m(i, j) /= norm;
    }
    return m;
  }

  std::vector<double> real_function(int n) {
    std::vector<double> f(n);
    for (double& x : f) x = uniform(-1.0, 1.0);
    return f;
  }

  latdist::LatticeFunction complex_function(int n) {
    latdist::LatticeFunction f(n);
    for (Complex& z : f) z = cuniform();
    return f;
  }
};

inline latdist::LatticeFunction to_complex(const std::vector<double>& f) {
  latdist::LatticeFunction out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
  return out;
}

// Independent spectral-norm estimate: power iteration on m^dagger m.
inline double power_iteration_norm(const ComplexMatrix& m, int iterations = 600) {
  const std::size_t n = m.cols();
  ComplexVector v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = Complex{1.0 + 0.01 * static_cast<double>(i % 5), 0.1 * static_cast<double>(i % 3)};
  const ComplexMatrix mh = m.adjoint();
  double sigma = 0.0;
  for (int it = 0; it < iterations; ++it) {
    ComplexVector w = mh * (m * v);
    double norm = 0.0;
    for (const Complex& z : w) norm += std::norm(z);
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (Complex& z : w) z /= norm;
    v = std::move(w);
    sigma = std::sqrt(norm);
  }
  return sigma;
}

inline latdist::WeightedDigraph random_digraph(Rng& rng, int n, double arrow_prob) {
  std::vector<latdist::Arrow> arrows;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      if (rng.uniform(0.0, 1.0) < arrow_prob) arrows.push_back({i, j, rng.uniform(0.1, 3.0)});
    }
  if (arrows.empty()) arrows.push_back({1, 2, 1.0});
  return latdist::WeightedDigraph(n, arrows);
}

// Exhaustive minimum over simple paths in the symmetrized graph.
inline double brute_force_graph_distance(const latdist::WeightedDigraph& g, int p, int q) {
  const int n = g.n_vertices();
  std::vector<std::vector<double>> len(n, std::vector<double>(n, latdist::kUnreachable));
  for (const latdist::Arrow& a : g.arrows()) {
    len[a.from - 1][a.to - 1] = std::min(len[a.from - 1][a.to - 1], a.epsilon);
    len[a.to - 1][a.from - 1] = std::min(len[a.to - 1][a.from - 1], a.epsilon);
  }
  double best = p == q ? 0.0 : latdist::kUnreachable;
  std::vector<bool> used(n, false);
  used[p - 1] = true;
  auto dfs = [&](auto&& self, int v, double acc) -> void {
    if (acc >= best) return;
    if (v == q - 1) {
      best = acc;
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || len[v][w] == latdist::kUnreachable) continue;
      used[w] = true;
      self(self, w, acc + len[v][w]);
      used[w] = false;
    }
  };
  dfs(dfs, p - 1, 0.0);
  return best;
}

// Metric-axiom checks shared by unit and acceptance tests.
inline bool check_metric_axioms(const std::vector<std::vector<double>>& m, double sym_tol,
                                double triangle_tol, double* worst = nullptr) {
  const std::size_t n = m.size();
  double bad = 0.0;
  for (std::size_t i = 0; i < n; ++i) bad = std::max(bad, std::abs(m[i][i]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(m[i][j] - m[j][i]) > sym_tol) bad = std::max(bad, std::abs(m[i][j] - m[j][i]));
    }
  bool ok = bad <= sym_tol;
  for (std::size_t i = 0; i < n && ok; ++i)
    for (std::size_t j = 0; j < n && ok; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(m[i][j]) || !std::isfinite(m[i][k]) || !std::isfinite(m[k][j]))
          continue;
        const double excess = m[i][j] - (m[i][k] + m[k][j]);
        if (excess > triangle_tol) {
          bad = std::max(bad, excess);
          ok = false;
          break;
        }
      }
  if (worst) *worst = bad;
  return ok;
}

}  // namespace testutil
