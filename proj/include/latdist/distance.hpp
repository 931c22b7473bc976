#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "latdist/triple.hpp"

namespace latdist {

struct DistanceQuery {
  const SpectralTriple& triple;
  int p = 1;  // 1-based site indices
  int q = 1;
};

struct SolverOptions {
  int max_iterations = 20000;
  double tolerance = 1e-8;  // convergence threshold on objective change
  int restarts = 8;
  double initial_step = 0.5;  // diminishing schedule initial_step / sqrt(iter)
  std::uint64_t seed = 12345;
};

struct OracleOptions {
  int starts = 32;
  std::uint64_t seed = 12345;
  double final_step = 1e-5;  // terminal coordinate step of the polish stage
};

enum class DistanceMethod { ExactOpen, ExactClosed, Numeric, Oracle };

struct DistanceResult {
  double value = 0.0;
  bool unbounded = false;
  DistanceMethod method = DistanceMethod::Numeric;
  std::vector<double> certificate;  // feasible real optimizer, gauge f(p) = 0
  long long iterations_used = 0;
  bool converged = true;
};

// Real function with the same commutator norm (open) or a no-larger one
// (closed): open case F_1 = 0, F_{k+1} = F_k + |f_{k+1} - f_k|; closed case
// F_k = |f_k - f_1|.
std::vector<double> real_reduce(const LatticeFunction& f, Topology topology);

// d(p,q) = |p - q| on the open lattice.
double distance_exact_open(int n, int p, int q);

// d(p,q) = min(|p - q|, n - |p - q|) on the closed lattice. Requires n >= 3.
double distance_exact_closed(int n, int p, int q);

// Maximizes f(q) - f(p) over real f with ||[D, f_hat]|| <= 1 by subgradient
// ascent on the homogeneous ratio with seeded random restarts, followed by a
// coordinate polish of the best certificate. The value is reported from the
// final certificate at its exact commutator norm, so it is always a feasible
// lower bound on the supremum.
DistanceResult distance_numeric(const DistanceQuery& query, const SolverOptions& opts);

// Independent desk-scale verifier: coordinate ascent over the increment
// parameterization of f from many random starts, every norm evaluated through
// the dense spectral-norm path. Guarded to n_sites <= 8.
DistanceResult distance_oracle(const DistanceQuery& query, const OracleOptions& opts);

struct MatrixStats {
  long long iterations_total = 0;
  int nonconverged_pairs = 0;
};

// Full pairwise distance matrix; exact closed forms where the kind admits
// them, distance_numeric otherwise. Symmetric with zero diagonal.
std::vector<std::vector<double>> distance_matrix(const SpectralTriple& t,
                                                 const SolverOptions& opts,
                                                 MatrixStats* stats = nullptr);

inline constexpr double kUnboundedDistance = std::numeric_limits<double>::infinity();

}  // namespace latdist
