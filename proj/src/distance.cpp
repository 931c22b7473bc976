#include "latdist/distance.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "latdist/detail/eig.hpp"
#include "latdist/detail/solver.hpp"

namespace latdist {

namespace detail {

double uniform01(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace detail

std::vector<double> real_reduce(const LatticeFunction& f, Topology topology) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n == 0) return out;
  if (topology == Topology::Open) {
    out[0] = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) out[k + 1] = out[k] + std::abs(f[k + 1] - f[k]);
  } else {
    for (std::size_t k = 0; k < n; ++k) out[k] = std::abs(f[k] - f[0]);
  }
  return out;
}

namespace {

void check_site(int n, int site) {
  if (site < 1 || site > n)
    throw IndexOutOfRangeError("site index " + std::to_string(site) + " outside 1.." +
                               std::to_string(n));
}

void check_solver_options(const SolverOptions& opts) {
  if (opts.tolerance <= 0.0) throw InvariantViolationError("solver tolerance must be positive");
  if (opts.max_iterations < 1) throw InvariantViolationError("max_iterations must be >= 1");
  if (opts.restarts < 1) throw InvariantViolationError("restarts must be >= 1");
}

// A = [D, diag(F)] without forming matrix products: A_ij = D_ij (F_j - F_i).
ComplexMatrix commutator_with_diagonal(const ComplexMatrix& d, const std::vector<double>& fdiag) {
  const std::size_t n = d.rows();
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (d(i, j) != Complex{0.0, 0.0}) a(i, j) = d(i, j) * (fdiag[j] - fdiag[i]);
  return a;
}

// Per-kind norm + dominant singular pair backend for the solver.
class Engine {
 public:
  explicit Engine(const SpectralTriple& t) : t_(t), n_(t.lattice.n_sites) {
    switch (t.kind) {
      case DiracKind::AdjacencyDoubled:
      case DiracKind::ClosedAdjacencyDoubled:
        path_ = Path::Adjacency;
        break;
      case DiracKind::SymmetricDifference:
        path_ = Path::Hermitian;
        break;
      case DiracKind::AdjacencyPlain:
        path_ = Path::Svd;
        break;
    }
  }

  double norm(const std::vector<double>& f) const { return eval(f, nullptr); }

  detail::NormGrad norm_and_grad(const std::vector<double>& f) const {
    detail::NormGrad out;
    out.grad.assign(n_, 0.0);
    out.norm = eval(f, &out.grad);
    return out;
  }

 private:
  enum class Path { Adjacency, Hermitian, Svd };

  double eval(const std::vector<double>& f, std::vector<double>* grad) const {
    switch (path_) {
      case Path::Adjacency: return eval_adjacency(f, grad);
      case Path::Hermitian: return eval_hermitian(f, grad);
      case Path::Svd: return eval_svd(f, grad);
    }
    return 0.0;
  }

  // The commutator's singular values are the arrow differences of f; the
  // dominant singular pair reduces to the (smallest) argmax arrow.
  double eval_adjacency(const std::vector<double>& f, std::vector<double>* grad) const {
    const bool closed = t_.lattice.topology == Topology::Closed;
    const int n_edges = closed ? n_ : n_ - 1;
    double best = -1.0;
    int best_edge = 0;
    for (int e = 0; e < n_edges; ++e) {
      const int from = e;
      const int to = (e + 1) % n_;
      const double d = std::abs(f[to] - f[from]);
      if (d > best) {
        best = d;
        best_edge = e;
      }
    }
    if (grad && best > 0.0) {
      const int from = best_edge;
      const int to = (best_edge + 1) % n_;
      const double s = f[to] - f[from] >= 0.0 ? 1.0 : -1.0;
      (*grad)[to] += s;
      (*grad)[from] -= s;
    }
    return std::max(best, 0.0);
  }

  double eval_hermitian(const std::vector<double>& f, std::vector<double>* grad) const {
    const std::vector<double> fdiag = repeat(f);
    const ComplexMatrix a = commutator_with_diagonal(t_.dirac, fdiag);
    const std::size_t dim = a.rows();

    // Q = i[A] is hermitian for real f; a real symmetric tridiagonal Q (the
    // symmetric-difference case) gets the O(n^2) bisection path.
    ComplexMatrix q(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) q(i, j) = Complex{0.0, 1.0} * a(i, j);

    bool tridiag = true;
    for (std::size_t i = 0; i < dim && tridiag; ++i) {
      for (std::size_t j = 0; j < dim && tridiag; ++j) {
        const Complex z = q(i, j);
        if (z.imag() != 0.0) tridiag = false;
        const std::size_t gap = i > j ? i - j : j - i;
        if (gap >= 2 && z != Complex{0.0, 0.0}) tridiag = false;
      }
      if (tridiag && i + 1 < dim && q(i, i + 1) != q(i + 1, i)) tridiag = false;
    }

    double theta = 0.0;
    ComplexVector v(dim);
    if (tridiag) {
      std::vector<double> dg(dim), off(dim > 1 ? dim - 1 : 0);
      for (std::size_t i = 0; i < dim; ++i) dg[i] = q(i, i).real();
      for (std::size_t i = 0; i + 1 < dim; ++i) off[i] = q(i, i + 1).real();
      const auto pair = detail::sym_tridiag_extreme_pair(dg, off);
      theta = pair.value;
      for (std::size_t i = 0; i < dim; ++i) v[i] = pair.vector[i];
    } else {
      const auto eig = detail::jacobi_hermitian(q, grad != nullptr);
      const std::size_t pick =
          std::abs(eig.values.front()) > std::abs(eig.values.back()) ? 0 : dim - 1;
      theta = eig.values[pick];
      if (grad)
        for (std::size_t i = 0; i < dim; ++i) v[i] = eig.vectors(i, pick);
    }

    const double sigma = std::abs(theta);
    if (grad && sigma > 0.0) {
      // A v = sigma u with u = -i sign(theta) v.
      const Complex u_phase{0.0, theta >= 0.0 ? -1.0 : 1.0};
      ComplexVector u(dim);
      for (std::size_t i = 0; i < dim; ++i) u[i] = u_phase * v[i];
      accumulate_grad(u, v, *grad);
    }
    return sigma;
  }

  double eval_svd(const std::vector<double>& f, std::vector<double>* grad) const {
    const std::vector<double> fdiag = repeat(f);
    const ComplexMatrix a = commutator_with_diagonal(t_.dirac, fdiag);
    const ComplexMatrix h = a.adjoint() * a;
    const auto eig = detail::jacobi_hermitian(h, grad != nullptr);
    const std::size_t dim = a.rows();
    const double sigma = std::sqrt(std::max(eig.values.back(), 0.0));
    if (grad && sigma > 1e-300) {
      ComplexVector v(dim);
      for (std::size_t i = 0; i < dim; ++i) v[i] = eig.vectors(i, dim - 1);
      ComplexVector u = a * v;
      for (Complex& z : u) z /= sigma;
      accumulate_grad(u, v, *grad);
    }
    return sigma;
  }

  // d sigma / d f_j = Re(u^dagger [D, E_j] v) summed over the (possibly
  // doubled) diagonal positions of site j.
  void accumulate_grad(const ComplexVector& u, const ComplexVector& v,
                       std::vector<double>& grad) const {
    const ComplexMatrix& d = t_.dirac;
    const ComplexVector dv = d * v;
    const ComplexVector du = d.adjoint() * u;
    const std::size_t dim = d.rows();
    for (std::size_t m = 0; m < dim; ++m) {
      const double term = (std::conj(du[m]) * v[m] - std::conj(u[m]) * dv[m]).real();
      grad[m % static_cast<std::size_t>(n_)] += term;
    }
  }

  std::vector<double> repeat(const std::vector<double>& f) const {
    if (!t_.doubled()) return f;
    std::vector<double> out(2 * f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      out[i] = f[i];
      out[f.size() + i] = f[i];
    }
    return out;
  }

  const SpectralTriple& t_;
  int n_;
  Path path_ = Path::Adjacency;
};

constexpr double kKernelTiny = 1e-14;

struct AscentOutcome {
  double best_val = -1.0;
  std::vector<double> best_f;  // scaled to unit engine norm
  long long iterations = 0;
  bool unbounded = false;
};

AscentOutcome ascend(const Engine& engine, int n, int p0, int q0, std::vector<double> f,
                     const SolverOptions& opts) {
  AscentOutcome out;
  f[p0] = 0.0;
  double h = engine.norm(f);
  if (h < kKernelTiny) {
    f[q0] += 1.0;  // escape the constants; any other zero-norm direction is unbounded
    h = engine.norm(f);
    if (h < kKernelTiny) {
      out.unbounded = true;
      return out;
    }
  }
  for (double& x : f) x /= h;

  const int window = 100 + 2 * n;
  double checkpoint_best = -std::numeric_limits<double>::infinity();
  std::vector<double> g(n);

  long long k = 1;
  for (; k <= opts.max_iterations; ++k) {
    ++out.iterations;
    const detail::NormGrad ng = engine.norm_and_grad(f);
    if (ng.norm < kKernelTiny) {
      out.unbounded = true;
      return out;
    }
    const double val = (f[q0] - f[p0]) / ng.norm;
    if (val > out.best_val) {
      out.best_val = val;
      out.best_f = f;
      for (double& x : out.best_f) x /= ng.norm;
    }
    if (val > 1e6 * n) {
      out.unbounded = true;
      return out;
    }
    // stalled when a whole window advances the record by less than tolerance
    if (k % window == 0) {
      if (out.best_val - checkpoint_best <= opts.tolerance) return out;
      checkpoint_best = out.best_val;
    }

    for (int j = 0; j < n; ++j)
      g[j] = ((j == q0 ? 1.0 : 0.0) - (j == p0 ? 1.0 : 0.0)) / ng.norm -
             (val / ng.norm) * ng.grad[j];
    g[p0] = 0.0;
    double gn = 0.0;
    for (double x : g) gn += x * x;
    gn = std::sqrt(gn);
    if (gn < 1e-15) return out;

    const double step = opts.initial_step / std::sqrt(static_cast<double>(k));
    for (int j = 0; j < n; ++j) f[j] += step * g[j] / gn;
    f[p0] = 0.0;
    double h2 = engine.norm(f);
    if (h2 < kKernelTiny) {
      f[q0] += 1.0;
      h2 = engine.norm(f);
      if (h2 < kKernelTiny) {
        out.unbounded = true;
        return out;
      }
    }
    for (double& x : f) x /= h2;
  }
  return out;
}

struct PolishOutcome {
  double value = -1.0;
  std::vector<double> f;
  long long evaluations = 0;
  bool stalled = false;  // reached the step floor (vs running out of budget)
};

// Coordinate ascent on the scale-free ratio in the increment parameterization
// d_k = f_{k+1} - f_k; single-site moves stall on max-norm level sets,
// increment moves do not. Accepted moves renormalize the increments to unit
// commutator norm: the ratio is scale-invariant, and without the projection a
// crawl can chase the supremum along a ray forever. Closed lattices also get
// paired moves d_k += s, d_l -= s: the wraparound edge pins the increment sum,
// so single moves stall against it.
PolishOutcome polish(const Engine& engine, int n, int p0, int q0, const std::vector<double>& f0,
                     long long eval_budget, bool closed) {
  PolishOutcome out;
  std::vector<double> d(n - 1);
  for (int k = 0; k + 1 < n; ++k) d[k] = f0[k + 1] - f0[k];

  std::vector<double> f(n);
  auto rebuild = [&](const std::vector<double>& inc) {
    f[0] = 0.0;
    for (int k = 0; k + 1 < n; ++k) f[k + 1] = f[k] + inc[k];
    const double shift = f[p0];
    for (double& x : f) x -= shift;
  };
  double h_at_candidate = 1.0;
  auto ratio = [&](const std::vector<double>& inc) {
    rebuild(inc);
    const double h = engine.norm(f);
    h_at_candidate = h;
    if (h < kKernelTiny) return -std::numeric_limits<double>::infinity();
    return (f[q0] - f[p0]) / h;
  };

  double val = ratio(d);
  ++out.evaluations;
  if (std::isfinite(val) && h_at_candidate > kKernelTiny)
    for (double& x : d) x /= h_at_candidate;

  double s = 1.0;
  const double s_min = 1e-9;
  while (s >= s_min && out.evaluations < eval_budget) {
    bool improved = false;
    auto try_move = [&](int k, int l, double dir) {
      for (int crawl = 0; crawl < 256 && out.evaluations < eval_budget; ++crawl) {
        d[k] += dir * s;
        if (l >= 0) d[l] -= dir * s;
        const double v2 = ratio(d);
        ++out.evaluations;
        if (v2 > val + 1e-13 * std::max(1.0, std::abs(val))) {
          val = v2;
          improved = true;
          const double h = h_at_candidate;
          for (double& x : d) x /= h;
        } else {
          d[k] -= dir * s;
          if (l >= 0) d[l] += dir * s;
          break;
        }
      }
    };
    for (int k = 0; k + 1 < n; ++k)
      for (const double dir : {1.0, -1.0}) try_move(k, -1, dir);
    if (closed)
      for (int k = 0; k + 1 < n; ++k)
        for (int l = k + 1; l + 1 < n; ++l)
          for (const double dir : {1.0, -1.0}) try_move(k, l, dir);
    if (!improved) s *= 0.5;
  }
  out.stalled = s < s_min;
  out.value = ratio(d);  // leaves f rebuilt at the final increments
  ++out.evaluations;
  out.f = f;
  return out;
}

DistanceResult finalize_numeric(const SpectralTriple& t, int p0, int q0, std::vector<double> f,
                                long long iterations, bool converged) {
  DistanceResult result;
  result.method = DistanceMethod::Numeric;
  result.iterations_used = iterations;
  result.converged = converged;

  const double h = commutator_norm(t, f);
  if (h < kKernelTiny) {
    result.unbounded = true;
    result.value = kUnboundedDistance;
    return result;
  }
  for (double& x : f) x /= h;
  const double shift = f[p0];
  for (double& x : f) x -= shift;
  result.value = f[q0] - f[p0];
  result.certificate = std::move(f);
  return result;
}

DistanceResult run_numeric(const DistanceQuery& query, const SolverOptions& opts,
                           const std::vector<std::vector<double>>& starts) {
  const SpectralTriple& t = query.triple;
  const int n = t.lattice.n_sites;
  check_site(n, query.p);
  check_site(n, query.q);
  check_solver_options(opts);
  const int p0 = query.p - 1;
  const int q0 = query.q - 1;

  DistanceResult result;
  result.method = DistanceMethod::Numeric;
  if (query.p == query.q) {
    result.certificate.assign(n, 0.0);
    return result;
  }

  const Engine engine(t);
  double best_val = -std::numeric_limits<double>::infinity();
  std::vector<double> best_f;
  long long iterations = 0;

  for (const std::vector<double>& start : starts) {
    if (start.size() != static_cast<std::size_t>(n))
      throw LengthMismatchError("solver start length differs from lattice size");
    AscentOutcome a = ascend(engine, n, p0, q0, start, opts);
    iterations += a.iterations;
    if (a.unbounded) {
      result.unbounded = true;
      result.value = kUnboundedDistance;
      result.iterations_used = iterations;
      return result;
    }
    if (a.best_val > best_val && !a.best_f.empty()) {
      best_val = a.best_val;
      best_f = std::move(a.best_f);
    }
  }

  if (best_f.empty()) best_f.assign(n, 0.0);
  // The polish budget scales with the user's iteration allowance; exhausting
  // it before the step floor is the non-convergence signal.
  const long long polish_budget =
      std::max<long long>(200, 10LL * static_cast<long long>(opts.max_iterations));
  PolishOutcome p = polish(engine, n, p0, q0, best_f, polish_budget,
                           t.lattice.topology == Topology::Closed);
  iterations += p.evaluations;
  if (std::isinf(p.value) && p.value > 0.0) {
    result.unbounded = true;
    result.value = kUnboundedDistance;
    result.iterations_used = iterations;
    return result;
  }
  return finalize_numeric(t, p0, q0, std::move(p.f), iterations, p.stalled);
}

}  // namespace

namespace detail {

NormGrad norm_and_subgradient(const SpectralTriple& t, const std::vector<double>& f) {
  if (f.size() != static_cast<std::size_t>(t.lattice.n_sites))
    throw LengthMismatchError("norm_and_subgradient: length differs from lattice size");
  return Engine(t).norm_and_grad(f);
}

DistanceResult distance_numeric_with_starts(const DistanceQuery& query, const SolverOptions& opts,
                                            const std::vector<std::vector<double>>& starts) {
  if (starts.empty()) throw InvariantViolationError("at least one start required");
  return run_numeric(query, opts, starts);
}

}  // namespace detail

double distance_exact_open(int n, int p, int q) {
  if (n < 2) throw TooSmallError("distance_exact_open: n must be >= 2");
  check_site(n, p);
  check_site(n, q);
  return std::abs(p - q);
}

double distance_exact_closed(int n, int p, int q) {
  if (n < 3) throw TooSmallError("distance_exact_closed: n must be >= 3");
  check_site(n, p);
  check_site(n, q);
  const int a = std::abs(p - q);
  return std::min(a, n - a);
}

DistanceResult distance_numeric(const DistanceQuery& query, const SolverOptions& opts) {
  check_solver_options(opts);
  const int n = query.triple.lattice.n_sites;
  std::mt19937_64 rng(opts.seed);
  std::vector<std::vector<double>> starts;
  starts.reserve(opts.restarts);
  for (int r = 0; r < opts.restarts; ++r) {
    std::vector<double> f(n);
    for (double& x : f) x = 2.0 * detail::uniform01(rng()) - 1.0;
    starts.push_back(std::move(f));
  }
  return run_numeric(query, opts, starts);
}

DistanceResult distance_oracle(const DistanceQuery& query, const OracleOptions& opts) {
  const SpectralTriple& t = query.triple;
  const int n = t.lattice.n_sites;
  if (n > 8) throw TooLargeError("distance_oracle: guarded to n_sites <= 8");
  check_site(n, query.p);
  check_site(n, query.q);
  const int p0 = query.p - 1;
  const int q0 = query.q - 1;

  DistanceResult result;
  result.method = DistanceMethod::Oracle;
  if (query.p == query.q) {
    result.certificate.assign(n, 0.0);
    return result;
  }

  // Every norm goes through the dense spectral-norm path; this routine is the
  // independent check on the subgradient solver.
  const bool doubled = t.doubled();
  const long long eval_budget = 2000000;
  long long evals = 0;
  std::vector<double> f(n);
  auto rebuild = [&](const std::vector<double>& inc) {
    f[0] = 0.0;
    for (int k = 0; k + 1 < n; ++k) f[k + 1] = f[k] + inc[k];
  };
  double h_at_candidate = 1.0;
  auto ratio = [&](const std::vector<double>& inc) {
    rebuild(inc);
    ++evals;
    const double h = spectral_norm(commutator(t.dirac, represent(f, doubled)));
    h_at_candidate = h;
    if (h < 1e-14) return -std::numeric_limits<double>::infinity();
    return (f[q0] - f[p0]) / h;
  };

  std::mt19937_64 rng(opts.seed);
  double best_val = -std::numeric_limits<double>::infinity();
  std::vector<double> best_d;
  for (int s = 0; s < opts.starts; ++s) {
    std::vector<double> d(n - 1, 1.0);
    if (s > 0)
      for (double& x : d) x = 2.0 * detail::uniform01(rng()) - 1.0;
    double val = ratio(d);
    if (std::isfinite(val))
      for (double& x : d) x /= h_at_candidate;
    double step = 1.0;
    const bool closed = t.lattice.topology == Topology::Closed;
    while (evals < eval_budget) {
      bool improved = false;
      // renormalize on accept: the ratio is scale-free, and an unnormalized
      // crawl can chase its supremum along a ray forever
      auto try_move = [&](int k, int l, double dir) {
        for (int crawl = 0; crawl < 256 && evals < eval_budget; ++crawl) {
          d[k] += dir * step;
          if (l >= 0) d[l] -= dir * step;
          const double v2 = ratio(d);
          if (v2 > val + 1e-13 * std::max(1.0, std::abs(val))) {
            val = v2;
            improved = true;
            const double h = h_at_candidate;
            for (double& x : d) x /= h;
          } else {
            d[k] -= dir * step;
            if (l >= 0) d[l] += dir * step;
            break;
          }
        }
      };
      for (int k = 0; k + 1 < n; ++k)
        for (const double dir : {1.0, -1.0}) try_move(k, -1, dir);
      if (closed)
        for (int k = 0; k + 1 < n; ++k)
          for (int l = k + 1; l + 1 < n; ++l)
            for (const double dir : {1.0, -1.0}) try_move(k, l, dir);
      if (!improved) {
        if (step <= opts.final_step) break;
        step = std::max(0.5 * step, opts.final_step);
      }
    }
    if (val > best_val) {
      best_val = val;
      best_d = d;
    }
  }

  rebuild(best_d);
  const double h = spectral_norm(commutator(t.dirac, represent(f, doubled)));
  result.iterations_used = evals;
  if (h < 1e-14) {
    result.unbounded = true;
    result.value = kUnboundedDistance;
    return result;
  }
  for (double& x : f) x /= h;
  const double shift = f[p0];
  for (double& x : f) x -= shift;
  result.value = f[q0] - f[p0];
  result.certificate = std::move(f);
  return result;
}

std::vector<std::vector<double>> distance_matrix(const SpectralTriple& t,
                                                 const SolverOptions& opts, MatrixStats* stats) {
  const int n = t.lattice.n_sites;
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (int p = 1; p <= n; ++p) {
    for (int q = p + 1; q <= n; ++q) {
      double v = 0.0;
      switch (t.kind) {
        case DiracKind::AdjacencyPlain:
        case DiracKind::AdjacencyDoubled:
          v = distance_exact_open(n, p, q);
          break;
        case DiracKind::ClosedAdjacencyDoubled:
          v = distance_exact_closed(n, p, q);
          break;
        case DiracKind::SymmetricDifference: {
          const DistanceResult r = distance_numeric({t, p, q}, opts);
          v = r.value;
          if (stats) {
            stats->iterations_total += r.iterations_used;
            if (!r.converged) ++stats->nonconverged_pairs;
          }
          break;
        }
      }
      m[p - 1][q - 1] = v;
      m[q - 1][p - 1] = v;
    }
  }
  return m;
}

}  // namespace latdist
