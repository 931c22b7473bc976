#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "latdist/errors.hpp"

namespace latdist {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Dense complex matrix, row-major storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const ComplexVector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<Complex>& data() const { return data_; }

  ComplexMatrix adjoint() const;

  double max_abs() const;
  double frobenius_norm() const;
  bool all_finite() const;

  // Largest entry magnitude of (this - other); both must have equal shape.
  double max_abs_diff(const ComplexMatrix& other) const;

  bool operator==(const ComplexMatrix&) const = default;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);
ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v);

// All eigenvalues of a hermitian matrix, ascending, with multiplicity.
// A negative hermiticity_tol selects the default 1e-12 * max(1, max_abs(m)).
// Throws NotSquareError / NotHermitianError / NonFiniteError.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m,
                                          double hermiticity_tol = -1.0);

// Largest singular value, computed from the eigenvalues of m^dagger * m.
double spectral_norm(const ComplexMatrix& m);

// a*b - b*a. Throws DimensionMismatchError for incompatible shapes.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace latdist
