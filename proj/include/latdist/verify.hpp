#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latdist/distance.hpp"

namespace latdist {

struct VerifySuiteResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// Numeric solver vs the exact closed forms, all pairs.
VerifySuiteResult verify_open_exactness(int n_max, const SolverOptions& opts);
VerifySuiteResult verify_closed_exactness(int n_max, const SolverOptions& opts);

// AdjacencyPlain solver distances vs AdjacencyDoubled solver distances
// (both numeric), capped at N = 8.
VerifySuiteResult verify_undoubled_equivalence(int n_max, const SolverOptions& opts);

// Q Q^dagger diagonality with the squared-difference entries, and the
// closed-form commutator norm vs the spectral norm, on random real functions.
VerifySuiteResult verify_norm_identities(int n_max, int samples_per_n, std::uint64_t seed);

// Spectral-triple identities for every buildable kind.
VerifySuiteResult verify_triple_axioms(int n_max);

// Open-case norm equality and closed-case norm inequality of real_reduce on
// random complex functions, capped at N = 8.
VerifySuiteResult verify_real_reduction(int n_max, int samples_per_n, std::uint64_t seed);

std::vector<VerifySuiteResult> run_verify_suites(int n_max, const SolverOptions& opts);

struct ConvergeRow {
  int n = 0;
  int center = 0;      // c = ceil(N/2)
  double d_next = 0.0;       // d(c, c+1)
  double d_next_next = 0.0;  // d(c, c+2)
  double ref_next = 2.0;
  double ref_next_next = 2.8284271247461903;  // 2 sqrt(2)
};

// Symmetric-difference distances for the interior center pairs over a sweep
// of lattice sizes, against the infinite-lattice reference values.
std::vector<ConvergeRow> run_converge(const std::vector<int>& sweep, const SolverOptions& opts);

}  // namespace latdist
