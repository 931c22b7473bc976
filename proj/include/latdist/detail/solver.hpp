#pragma once

#include <cstdint>
#include <vector>

#include "latdist/distance.hpp"
#include "latdist/triple.hpp"

namespace latdist::detail {

struct NormGrad {
  double norm = 0.0;
  std::vector<double> grad;  // d||[D, f_hat]|| / df_j, one entry per site
};

// Norm and one subgradient of f -> ||[D, f_hat]|| at a real f, assembled from
// a dominant singular pair of the commutator. Exposed for gradient tests.
NormGrad norm_and_subgradient(const SpectralTriple& t, const std::vector<double>& f);

// distance_numeric with caller-supplied start vectors instead of seeded
// random restarts (each start must have n_sites entries).
DistanceResult distance_numeric_with_starts(const DistanceQuery& query, const SolverOptions& opts,
                                            const std::vector<std::vector<double>>& starts);

// Deterministic uniform double in [0, 1) from a raw 64-bit word; RNG helper
// shared by solver, oracle, and the verify suites.
double uniform01(std::uint64_t word);

}  // namespace latdist::detail
