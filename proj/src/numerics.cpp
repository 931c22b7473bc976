#include "latdist/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "latdist/detail/eig.hpp"

namespace latdist {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const ComplexVector& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  for (const Complex& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionMismatchError("max_abs_diff: shapes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i)
    m = std::max(m, std::abs(data_[i] - other.data_[i]));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionMismatchError("operator+=: shapes differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw DimensionMismatchError("operator-=: shapes differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (Complex& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatchError("operator*: inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix operator*(Complex scalar, ComplexMatrix m) { return m *= scalar; }

ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v) {
  if (m.cols() != v.size())
    throw DimensionMismatchError("matrix-vector product: dimensions differ");
  ComplexVector out(m.rows(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

namespace {

void require_finite(const ComplexMatrix& m, const char* where) {
  if (!m.all_finite()) throw NonFiniteError(std::string(where) + ": non-finite entry");
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double hermiticity_tol) {
  if (!m.is_square()) throw NotSquareError("hermitian_eigenvalues: matrix not square");
  require_finite(m, "hermitian_eigenvalues");
  const double tol =
      hermiticity_tol >= 0.0 ? hermiticity_tol : 1e-12 * std::max(1.0, m.max_abs());
  double dev = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
  if (dev > tol)
    throw NotHermitianError("hermitian_eigenvalues: deviation " + std::to_string(dev) +
                            " exceeds tolerance");
  return detail::jacobi_hermitian(m, /*want_vectors=*/false).values;
}

double spectral_norm(const ComplexMatrix& m) {
  require_finite(m, "spectral_norm");
  if (m.rows() == 0 || m.cols() == 0 || m.max_abs() == 0.0) return 0.0;
  const ComplexMatrix h = m.adjoint() * m;
  const auto eig = detail::jacobi_hermitian(h, /*want_vectors=*/false);
  const double top = eig.values.empty() ? 0.0 : eig.values.back();
  return std::sqrt(std::max(top, 0.0));
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
    throw DimensionMismatchError("commutator: operands must be square and equal-sized");
  require_finite(a, "commutator");
  require_finite(b, "commutator");
  return a * b - b * a;
}

}  // namespace latdist
