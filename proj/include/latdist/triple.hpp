#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latdist/numerics.hpp"

namespace latdist {

enum class Topology { Open, Closed };

// The four Dirac operator families on the one-dimensional lattice.
//   AdjacencyPlain         N x N   oriented-path adjacency matrix, not selfadjoint
//   AdjacencyDoubled       2N x 2N selfadjoint doubling of the path adjacency
//   SymmetricDifference    N x N   central-difference operator, open boundary
//   ClosedAdjacencyDoubled 2N x 2N selfadjoint doubling of the cycle adjacency
enum class DiracKind {
  AdjacencyPlain,
  AdjacencyDoubled,
  SymmetricDifference,
  ClosedAdjacencyDoubled,
};

struct LatticeSpec {
  int n_sites = 2;
  Topology topology = Topology::Open;
};

// Algebra element: one complex value per lattice site, sites numbered 1..N.
using LatticeFunction = std::vector<Complex>;

struct SpectralTriple {
  LatticeSpec lattice;
  DiracKind kind = DiracKind::AdjacencyDoubled;
  ComplexMatrix dirac;
  std::size_t hilbert_dim = 0;
  std::optional<ComplexMatrix> grading;
  bool selfadjoint = false;

  bool doubled() const {
    return kind == DiracKind::AdjacencyDoubled || kind == DiracKind::ClosedAdjacencyDoubled;
  }
};

// N x N matrix with ones on the first superdiagonal: the adjacency matrix of
// the oriented path 1 -> 2 -> ... -> N. Requires n >= 2.
ComplexMatrix build_adjacency_block(int n);

// Cycle adjacency: path adjacency plus the closing arrow N -> 1. Requires n >= 3.
ComplexMatrix build_closed_adjacency_block(int n);

// [[0, B^dagger], [B, 0]] on C^{2n}; selfadjoint by construction.
ComplexMatrix build_doubled_dirac(const ComplexMatrix& block);

// Central difference (psi_{k+1} - psi_{k-1}) / (2i), truncated to n sites with
// open boundary. Matrix convention: (M psi)_k = sum_l M_{kl} psi_l, so the
// 1/(2i) coefficient sits on the superdiagonal. Requires n >= 2.
ComplexMatrix build_symmetric_difference(int n);

// diag(1,...,1,-1,...,-1) on C^{2n}.
ComplexMatrix build_grading(int n);

// Diagonal representation of f: diag(f_1..f_N, f_1..f_N) when doubled,
// diag(f_1..f_N) otherwise.
ComplexMatrix represent(const LatticeFunction& f, bool doubled);
ComplexMatrix represent(const std::vector<double>& f, bool doubled);

SpectralTriple build_triple(const LatticeSpec& lattice, DiracKind kind);

struct ValidationCheck {
  enum class Status { Passed, Failed, Skipped, NotApplicable };
  std::string name;
  Status status = Status::NotApplicable;
  double max_deviation = 0.0;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_passed() const;
};

// Checks the triple identities: D = D^dagger, grading^2 = 1, grading
// anticommutes with D, grading commutes with every represented sample.
// AdjacencyPlain reports the selfadjointness check as Skipped.
ValidationReport validate_triple(const SpectralTriple& t,
                                 const std::vector<LatticeFunction>& f_samples, double tol);

// ||[D, f_hat]||. Adjacency kinds use the exact closed form
// max_k |f_{k+1} - f_k| (with wraparound on the closed lattice); the
// symmetric-difference kind goes through the spectral norm of the commutator.
double commutator_norm(const SpectralTriple& t, const LatticeFunction& f);
double commutator_norm(const SpectralTriple& t, const std::vector<double>& f);

std::string to_string(DiracKind kind);
std::string to_string(Topology topology);

}  // namespace latdist
