#include "latdist/detail/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace latdist::detail {

namespace {

constexpr int kMaxSweeps = 100;

double offdiag_frobenius(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

HermitianEigen jacobi_hermitian(const ComplexMatrix& m, bool want_vectors) {
  const std::size_t n = m.rows();
  // Work on the hermitian average; construction noise in the input must not
  // leak into the rotations.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

  ComplexMatrix v = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix();

  const double off_stop = 1e-14 * m.frobenius_norm();
  const double rot_skip = n > 0 ? off_stop / (2.0 * static_cast<double>(n)) : 0.0;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (offdiag_frobenius(a) <= off_stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= rot_skip) continue;

        // Unitary 2x2 rotation zeroing the (p,q) entry: factor the pivot's
        // phase out, then apply the classical real Jacobi angle.
        const Complex w = apq / r;  // phase of the pivot
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        // small-magnitude root of t^2 - 2 tau t - 1 = 0 for this G convention
        const double t =
            (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * cs;
        const Complex wc = std::conj(w);

        // a <- U^dagger a U with U = [[cs, -sn], [conj(w) sn, conj(w) cs]]
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = cs * akp + wc * sn * akq;
          a(k, q) = -sn * akp + wc * cs * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = cs * apk + w * sn * aqk;
          a(q, k) = -sn * apk + w * cs * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = Complex{a(p, p).real(), 0.0};
        a(q, q) = Complex{a(q, q).real(), 0.0};

        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = v(k, p);
            const Complex vkq = v(k, q);
            v(k, p) = cs * vkp + wc * sn * vkq;
            v(k, q) = -sn * vkp + wc * cs * vkq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigen out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(order[i], order[i]).real();
  if (want_vectors) {
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

int sym_tridiag_count_below(const std::vector<double>& diag, const std::vector<double>& off,
                            double x) {
  const std::size_t n = diag.size();
  int count = 0;
  double q = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == 0) {
      q = diag[0] - x;
    } else {
      const double e2 = off[k - 1] * off[k - 1];
      q = diag[k] - x - e2 / q;
    }
    if (q == 0.0) q = -1e-300;  // counts the exact hit as below
    if (q < 0.0) ++count;
  }
  return count;
}

namespace {

// Smallest x with count_below(x) >= target, located by bisection in [lo, hi].
double bisect_eigenvalue(const std::vector<double>& diag, const std::vector<double>& off, double lo,
                         double hi, int target) {
  for (int iter = 0; iter < 210 && hi - lo > 1e-16 * std::max({1.0, std::abs(lo), std::abs(hi)});
       ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (sym_tridiag_count_below(diag, off, mid) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// One inverse-iteration solve: (T - sigma I) y = b, tridiagonal LU with
// partial pivoting (fill appears on the second superdiagonal).
bool solve_shifted(const std::vector<double>& diag, const std::vector<double>& off, double sigma,
                   std::vector<double>& b) {
  const std::size_t n = diag.size();
  std::vector<double> d0(n), d1(n > 1 ? n - 1 : 0), d2(n > 2 ? n - 2 : 0, 0.0);
  std::vector<double> sub(n > 1 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) d0[i] = diag[i] - sigma;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d1[i] = off[i];
    sub[i] = off[i];
  }
  double scale = std::abs(sigma);
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(diag[i]));
  for (double e : off) scale = std::max(scale, std::abs(e));
  const double tiny = 1e-30 * std::max(scale, 1e-30);

  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (std::abs(sub[k]) > std::abs(d0[k])) {
      // swap row k and k+1
      std::swap(d0[k], sub[k]);
      const double t1 = d1[k];
      d1[k] = d0[k + 1];
      d0[k + 1] = t1;
      if (k + 2 < n) {
        d2[k] = d1[k + 1];
        d1[k + 1] = 0.0;
      }
      std::swap(b[k], b[k + 1]);
    }
    if (std::abs(d0[k]) < tiny) d0[k] = (d0[k] < 0.0 ? -tiny : tiny);
    const double mult = sub[k] / d0[k];
    d0[k + 1] -= mult * d1[k];
    if (k + 2 < n) d1[k + 1] -= mult * d2[k];
    b[k + 1] -= mult * b[k];
  }
  if (std::abs(d0[n - 1]) < tiny) d0[n - 1] = (d0[n - 1] < 0.0 ? -tiny : tiny);

  for (std::size_t ir = n; ir-- > 0;) {
    double s = b[ir];
    if (ir + 1 < n) s -= d1[ir] * b[ir + 1];
    if (ir + 2 < n) s -= d2[ir] * b[ir + 2];
    b[ir] = s / d0[ir];
    if (!std::isfinite(b[ir])) return false;
  }
  return true;
}

void normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  if (s > 0.0)
    for (double& x : v) x /= s;
}

ExtremePair dense_fallback(const std::vector<double>& diag, const std::vector<double>& off) {
  const std::size_t n = diag.size();
  ComplexMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i) t(i, i) = diag[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    t(i, i + 1) = off[i];
    t(i + 1, i) = off[i];
  }
  const auto eig = jacobi_hermitian(t, /*want_vectors=*/true);
  const std::size_t pick =
      std::abs(eig.values.front()) > std::abs(eig.values.back()) ? 0 : n - 1;
  ExtremePair out;
  out.value = eig.values[pick];
  out.vector.resize(n);
  // The Jacobi vector of a real matrix can carry a global phase; rotate it
  // back onto the real axis.
  std::size_t imax = 0;
  double amax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(eig.vectors(i, pick));
    if (a > amax) {
      amax = a;
      imax = i;
    }
  }
  const Complex phase =
      amax > 0.0 ? eig.vectors(imax, pick) / amax : Complex{1.0, 0.0};
  for (std::size_t i = 0; i < n; ++i)
    out.vector[i] = (std::conj(phase) * eig.vectors(i, pick)).real();
  normalize(out.vector);
  return out;
}

}  // namespace

ExtremePair sym_tridiag_extreme_pair(const std::vector<double>& diag,
                                     const std::vector<double>& off) {
  const std::size_t n = diag.size();
  if (n == 0) return {};
  if (n == 1) return {diag[0], {1.0}};

  double scale = 0.0;
  for (double d : diag) scale = std::max(scale, std::abs(d));
  for (double e : off) scale = std::max(scale, std::abs(e));
  if (scale == 0.0) {
    ExtremePair out;
    out.value = 0.0;
    out.vector.assign(n, 0.0);
    out.vector[0] = 1.0;
    return out;
  }

  // Gershgorin interval.
  double lo = diag[0], hi = diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  const double pad = 1e-12 * scale;
  const double lam_max = bisect_eigenvalue(diag, off, lo - pad, hi + pad, static_cast<int>(n));
  const double lam_min = bisect_eigenvalue(diag, off, lo - pad, hi + pad, 1);
  const double theta = std::abs(lam_max) >= std::abs(lam_min) ? lam_max : lam_min;

  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * static_cast<double>(i % 7);
  normalize(v);
  bool ok = true;
  for (int it = 0; it < 3 && ok; ++it) {
    ok = solve_shifted(diag, off, theta, v);
    if (ok) normalize(v);
  }
  if (ok) {
    // Residual check against the extracted eigenvalue.
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double t = diag[i] * v[i] - theta * v[i];
      if (i > 0) t += off[i - 1] * v[i - 1];
      if (i + 1 < n) t += off[i] * v[i + 1];
      res = std::max(res, std::abs(t));
    }
    if (res <= 1e-10 * scale) return {theta, std::move(v)};
  }
  return dense_fallback(diag, off);
}

}  // namespace latdist::detail
