#include "latdist/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "latdist/detail/solver.hpp"

namespace latdist {

namespace {

std::vector<double> random_real(std::mt19937_64& rng, int n) {
  std::vector<double> f(n);
  for (double& x : f) x = 2.0 * detail::uniform01(rng()) - 1.0;
  return f;
}

LatticeFunction random_complex(std::mt19937_64& rng, int n) {
  LatticeFunction f(n);
  for (Complex& z : f)
    z = Complex{2.0 * detail::uniform01(rng()) - 1.0, 2.0 * detail::uniform01(rng()) - 1.0};
  return f;
}

LatticeFunction to_complex(const std::vector<double>& f) {
  LatticeFunction out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
  return out;
}

}  // namespace

VerifySuiteResult verify_open_exactness(int n_max, const SolverOptions& opts) {
  VerifySuiteResult r{"open-lattice numeric vs |p-q|", 0.0, 1e-6, false};
  for (int n = 2; n <= n_max; ++n) {
    const SpectralTriple t = build_triple({n, Topology::Open}, DiracKind::AdjacencyDoubled);
    for (int p = 1; p <= n; ++p)
      for (int q = p + 1; q <= n; ++q) {
        const DistanceResult got = distance_numeric({t, p, q}, opts);
        r.max_deviation =
            std::max(r.max_deviation, std::abs(got.value - distance_exact_open(n, p, q)));
      }
  }
  r.passed = r.max_deviation <= r.tolerance;
  return r;
}

VerifySuiteResult verify_closed_exactness(int n_max, const SolverOptions& opts) {
  VerifySuiteResult r{"closed-lattice numeric vs exact cyclic distance", 0.0, 1e-6, false};
  for (int n = 3; n <= n_max; ++n) {
    const SpectralTriple t = build_triple({n, Topology::Closed}, DiracKind::ClosedAdjacencyDoubled);
    for (int p = 1; p <= n; ++p)
      for (int q = p + 1; q <= n; ++q) {
        const DistanceResult got = distance_numeric({t, p, q}, opts);
        r.max_deviation =
            std::max(r.max_deviation, std::abs(got.value - distance_exact_closed(n, p, q)));
      }
  }
  r.passed = r.max_deviation <= r.tolerance;
  return r;
}

VerifySuiteResult verify_undoubled_equivalence(int n_max, const SolverOptions& opts) {
  VerifySuiteResult r{"undoubled vs doubled distances", 0.0, 1e-6, false};
  for (int n = 2; n <= std::min(n_max, 8); ++n) {
    const SpectralTriple plain = build_triple({n, Topology::Open}, DiracKind::AdjacencyPlain);
    const SpectralTriple doubled = build_triple({n, Topology::Open}, DiracKind::AdjacencyDoubled);
    for (int p = 1; p <= n; ++p)
      for (int q = p + 1; q <= n; ++q) {
        const double a = distance_numeric({plain, p, q}, opts).value;
        const double b = distance_numeric({doubled, p, q}, opts).value;
        r.max_deviation = std::max(r.max_deviation, std::abs(a - b));
      }
  }
  r.passed = r.max_deviation <= r.tolerance;
  return r;
}

VerifySuiteResult verify_norm_identities(int n_max, int samples_per_n, std::uint64_t seed) {
  VerifySuiteResult r{"commutator norm identities", 0.0, 1e-12, false};
  std::mt19937_64 rng(seed);
  for (int n = 2; n <= n_max; ++n) {
    const SpectralTriple open_d = build_triple({n, Topology::Open}, DiracKind::AdjacencyDoubled);
    const SpectralTriple open_p = build_triple({n, Topology::Open}, DiracKind::AdjacencyPlain);
    const SpectralTriple* closed_d = nullptr;
    SpectralTriple closed_store;
    if (n >= 3) {
      closed_store = build_triple({n, Topology::Closed}, DiracKind::ClosedAdjacencyDoubled);
      closed_d = &closed_store;
    }
    for (int s = 0; s < samples_per_n; ++s) {
      const std::vector<double> f = random_real(rng, n);
      const LatticeFunction fc = to_complex(f);

      // Q Q^dagger = diag(0, (f_2-f_1)^2, ..., (f_N-f_{N-1})^2,
      //                   (f_2-f_1)^2, ..., (f_N-f_{N-1})^2, 0)
      const ComplexMatrix a = commutator(open_d.dirac, represent(fc, true));
      ComplexMatrix q(2 * n, 2 * n);
      for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j) q(i, j) = Complex{0.0, 1.0} * a(i, j);
      const ComplexMatrix qq = q * q.adjoint();
      for (std::size_t i = 0; i < qq.rows(); ++i)
        for (std::size_t j = 0; j < qq.cols(); ++j) {
          double expected = 0.0;
          if (i == j) {
            if (i >= 1 && i < static_cast<std::size_t>(n)) {
              const double d = f[i] - f[i - 1];
              expected = d * d;
            } else if (i >= static_cast<std::size_t>(n) && i + 1 < qq.rows()) {
              const std::size_t k = i - static_cast<std::size_t>(n);
              const double d = f[k + 1] - f[k];
              expected = d * d;
            }
          }
          r.max_deviation = std::max(r.max_deviation, std::abs(qq(i, j) - Complex{expected, 0.0}));
        }

      // Closed-form norm vs dense spectral norm, every adjacency kind.
      for (const SpectralTriple* t : {&open_d, &open_p, closed_d}) {
        if (!t) continue;
        const double fast = commutator_norm(*t, fc);
        const double dense = spectral_norm(commutator(t->dirac, represent(fc, t->doubled())));
        r.max_deviation = std::max(r.max_deviation, std::abs(fast - dense));
      }
    }
  }
  r.passed = r.max_deviation <= r.tolerance;
  return r;
}

VerifySuiteResult verify_triple_axioms(int n_max) {
  VerifySuiteResult r{"spectral triple identities", 0.0, 1e-12, false};
  std::mt19937_64 rng(99);
  bool all_ok = true;
  auto run = [&](const SpectralTriple& t) {
    const int n = t.lattice.n_sites;
    std::vector<LatticeFunction> samples;
    for (int s = 0; s < 3; ++s) samples.push_back(to_complex(random_real(rng, n)));
    samples.push_back(random_complex(rng, n));
    const ValidationReport report = validate_triple(t, samples, r.tolerance);
    if (!report.all_passed()) all_ok = false;
    for (const ValidationCheck& c : report.checks)
      if (c.status == ValidationCheck::Status::Passed ||
          c.status == ValidationCheck::Status::Failed)
        r.max_deviation = std::max(r.max_deviation, c.max_deviation);
  };
  for (int n = 2; n <= n_max; ++n) {
    run(build_triple({n, Topology::Open}, DiracKind::AdjacencyPlain));
    run(build_triple({n, Topology::Open}, DiracKind::AdjacencyDoubled));
    run(build_triple({n, Topology::Open}, DiracKind::SymmetricDifference));
    if (n >= 3) run(build_triple({n, Topology::Closed}, DiracKind::ClosedAdjacencyDoubled));
  }
  r.passed = all_ok && r.max_deviation <= r.tolerance;
  return r;
}

VerifySuiteResult verify_real_reduction(int n_max, int samples_per_n, std::uint64_t seed) {
  VerifySuiteResult r{"real reduction norm equality", 0.0, 1e-12, false};
  std::mt19937_64 rng(seed);
  for (int n = 2; n <= std::min(n_max, 8); ++n) {
    const SpectralTriple open_d = build_triple({n, Topology::Open}, DiracKind::AdjacencyDoubled);
    const SpectralTriple* closed_d = nullptr;
    SpectralTriple closed_store;
    if (n >= 3) {
      closed_store = build_triple({n, Topology::Closed}, DiracKind::ClosedAdjacencyDoubled);
      closed_d = &closed_store;
    }
    for (int s = 0; s < samples_per_n; ++s) {
      const LatticeFunction f = random_complex(rng, n);
      const std::vector<double> f_open = real_reduce(f, Topology::Open);
      r.max_deviation = std::max(
          r.max_deviation, std::abs(commutator_norm(open_d, f) - commutator_norm(open_d, f_open)));
      if (closed_d) {
        const std::vector<double> f_closed = real_reduce(f, Topology::Closed);
        const double excess =
            commutator_norm(*closed_d, f_closed) - commutator_norm(*closed_d, f);
        r.max_deviation = std::max(r.max_deviation, std::max(excess, 0.0));
      }
    }
  }
  r.passed = r.max_deviation <= r.tolerance;
  return r;
}

std::vector<VerifySuiteResult> run_verify_suites(int n_max, const SolverOptions& opts) {
  std::vector<VerifySuiteResult> out;
  out.push_back(verify_open_exactness(n_max, opts));
  out.push_back(verify_closed_exactness(n_max, opts));
  out.push_back(verify_undoubled_equivalence(n_max, opts));
  out.push_back(verify_norm_identities(n_max, 20, opts.seed));
  out.push_back(verify_triple_axioms(n_max));
  out.push_back(verify_real_reduction(n_max, 20, opts.seed));
  return out;
}

std::vector<ConvergeRow> run_converge(const std::vector<int>& sweep, const SolverOptions& opts) {
  std::vector<ConvergeRow> rows;
  for (const int n : sweep) {
    if (n < 4) throw TooSmallError("converge sweep entries must be >= 4");
    const SpectralTriple t = build_triple({n, Topology::Open}, DiracKind::SymmetricDifference);
    ConvergeRow row;
    row.n = n;
    row.center = (n + 1) / 2;
    row.d_next = distance_numeric({t, row.center, row.center + 1}, opts).value;
    row.d_next_next = distance_numeric({t, row.center, row.center + 2}, opts).value;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace latdist
