// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#include "risim/complexlin.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace risim {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw ShapeError("ComplexMatrix: entry count " + std::to_string(entries_.size()) +
                     " does not match " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::row_vector(std::span<const cplx> v) {
  return ComplexMatrix(1, v.size(), std::vector<cplx>(v.begin(), v.end()));
}

ComplexMatrix ComplexMatrix::column_vector(std::span<const cplx> v) {
  return ComplexMatrix(v.size(), 1, std::vector<cplx>(v.begin(), v.end()));
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                     std::to_string(b.rows()) + " differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx ark = a(r, k);
      if (ark == cplx{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) {
        out(r, c) += ark * b(k, c);
      }
    }
  }
  return out;
}

ComplexMatrix hermitian(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      out(c, r) = std::conj(a(r, c));
    }
  }
  return out;
}

double frobenius_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (const cplx& e : a.entries()) sum += std::norm(e);
  return std::sqrt(sum);
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.same_shape(b)) throw ShapeError("add: shape mismatch");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out.entries()[i] = a.entries()[i] + b.entries()[i];
  return out;
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.same_shape(b)) throw ShapeError("subtract: shape mismatch");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out.entries()[i] = a.entries()[i] - b.entries()[i];
  return out;
}

ComplexMatrix scale(const ComplexMatrix& a, cplx factor) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out.entries()[i] = a.entries()[i] * factor;
  return out;
}

std::optional<ComplexMatrix> try_inverse(const ComplexMatrix& a, double pivot_tol) {
  if (a.rows() != a.cols()) throw ShapeError("try_inverse: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return ComplexMatrix();

  ComplexMatrix work = a;
  ComplexMatrix inv = ComplexMatrix::identity(n);

  double max_abs = 0.0;
  for (const cplx& e : a.entries()) max_abs = std::max(max_abs, std::abs(e));
  const double threshold = pivot_tol * std::max(max_abs, 1.0);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(work(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(work(r, col));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best <= threshold) return std::nullopt;

    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(work(pivot, c), work(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const cplx inv_pivot = 1.0 / work(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      work(col, c) *= inv_pivot;
      inv(col, c) *= inv_pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const cplx factor = work(r, col);
      if (factor == cplx{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < n; ++c) {
        work(r, c) -= factor * work(col, c);
        inv(r, c) -= factor * inv(col, c);
      }
    }
  }
  return inv;
}

std::optional<ComplexMatrix> right_pseudo_inverse(const ComplexMatrix& a) {
  if (a.rows() > a.cols()) {
    throw ShapeError("right_pseudo_inverse: expected a wide matrix (rows <= cols)");
  }
  const ComplexMatrix ah = hermitian(a);
  const auto gram_inv = try_inverse(matmul(a, ah));
  if (!gram_inv) return std::nullopt;
  return matmul(ah, *gram_inv);
}

}  // namespace risim
