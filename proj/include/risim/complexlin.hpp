// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#ifndef RISIM_COMPLEXLIN_HPP
#define RISIM_COMPLEXLIN_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "risim/errors.hpp"

namespace risim {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. Carries every channel, precoding and
// reflection quantity in the simulator. Problem sizes stay small (tens to a
// few hundred per dimension), so there is no blocking or sparsity.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  // Takes ownership of row-major entries; length must equal rows*cols.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix row_vector(std::span<const cplx> v);
  static ComplexMatrix column_vector(std::span<const cplx> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<cplx> entries() { return entries_; }
  std::span<const cplx> entries() const { return entries_; }

  bool same_shape(const ComplexMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;
};

// Standard complex matrix product; throws ShapeError on inner-dimension
// mismatch.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// Conjugate transpose.
ComplexMatrix hermitian(const ComplexMatrix& a);

// sqrt of the sum of squared entry moduli.
double frobenius_norm(const ComplexMatrix& a);

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, cplx factor);

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b);
}
inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  return add(a, b);
}
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  return subtract(a, b);
}

// Gauss-Jordan inverse with partial pivoting. Returns nullopt when a pivot
// falls below pivot_tol relative to the largest initial entry magnitude
// (singular to working precision).
std::optional<ComplexMatrix> try_inverse(const ComplexMatrix& a, double pivot_tol = 1e-12);

// Right pseudo-inverse A^H (A A^H)^-1 for a full-row-rank wide matrix;
// nullopt when A A^H is singular to working precision.
std::optional<ComplexMatrix> right_pseudo_inverse(const ComplexMatrix& a);

}  // namespace risim

#endif
