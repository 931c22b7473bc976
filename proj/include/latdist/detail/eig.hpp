#pragma once

#include <vector>

#include "latdist/numerics.hpp"

namespace latdist::detail {

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // unit eigenvectors as columns; empty unless requested
};

// Cyclic Jacobi rotations on a hermitian matrix. Sweeps stop when the
// off-diagonal Frobenius mass drops below 1e-14 * ||m||_F, capped at 100
// sweeps. Input is symmetrized once to remove rounding-level asymmetry.
HermitianEigen jacobi_hermitian(const ComplexMatrix& m, bool want_vectors);

struct ExtremePair {
  double value = 0.0;          // eigenvalue of largest magnitude
  std::vector<double> vector;  // unit eigenvector
};

// Extreme (largest-magnitude) eigenpair of a real symmetric tridiagonal
// matrix: bisection with Sturm counts for the edge eigenvalues, inverse
// iteration for the vector. `off` has size diag.size() - 1.
ExtremePair sym_tridiag_extreme_pair(const std::vector<double>& diag,
                                     const std::vector<double>& off);

// Eigenvalue counting function behind the bisection: number of eigenvalues
// strictly below x. Exposed for tests.
int sym_tridiag_count_below(const std::vector<double>& diag,
                            const std::vector<double>& off, double x);

}  // namespace latdist::detail
