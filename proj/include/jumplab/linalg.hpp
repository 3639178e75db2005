#pragma once

// Exact dense linear algebra over a field scalar (Fp or Rational).
// Plain Gaussian elimination; every pivot decision is an exact zero test.

#include "jumplab/scalar.hpp"

#include <vector>

namespace jumplab {

// Reduces M to row echelon form in place.  Returns the pivot columns.
template <class S>
std::vector<Eigen::Index> row_echelon(MatrixX<S>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (!scalar_is_zero(m(r, col))) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != row) m.row(piv).swap(m.row(row));
    S inv = ScalarOps<S>::from_int(1, m(row, col)) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || scalar_is_zero(m(r, col))) continue;
      S f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c)
        m(r, c) = m(r, c) - f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class S>
Eigen::Index rank(MatrixX<S> m) {
  return static_cast<Eigen::Index>(row_echelon(m).size());
}

// Basis of the right kernel as columns; M * K == 0 exactly.
template <class S>
MatrixX<S> kernel_basis(MatrixX<S> m) {
  const Eigen::Index n = m.cols();
  std::vector<Eigen::Index> pivots = row_echelon(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Eigen::Index p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  const Eigen::Index k = n - static_cast<Eigen::Index>(pivots.size());
  MatrixX<S> ker(n, k);
  S zero{};
  if (m.size() > 0) zero = ScalarOps<S>::from_int(0, m(0, 0));
  ker.setConstant(zero);
  Eigen::Index kc = 0;
  for (Eigen::Index free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[static_cast<std::size_t>(free_col)]) continue;
    ker(free_col, kc) = ScalarOps<S>::from_int(1, zero);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (pivots[r] < free_col)
        ker(pivots[r], kc) = -m(static_cast<Eigen::Index>(r), free_col);
    }
    ++kc;
  }
  return ker;
}

template <class S>
S determinant(MatrixX<S> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
  const Eigen::Index n = m.rows();
  if (n == 0) return ScalarOps<S>::from_int(1, S{});
  S det = ScalarOps<S>::from_int(1, m(0, 0));
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = col; r < n; ++r) {
      if (!scalar_is_zero(m(r, col))) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return ScalarOps<S>::from_int(0, m(0, 0));
    if (piv != col) {
      m.row(piv).swap(m.row(col));
      det = -det;
    }
    det = det * m(col, col);
    S inv = ScalarOps<S>::from_int(1, m(col, col)) / m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (scalar_is_zero(m(r, col))) continue;
      S f = m(r, col) * inv;
      for (Eigen::Index c = col; c < n; ++c) m(r, c) = m(r, c) - f * m(col, c);
    }
  }
  return det;
}

}  // namespace jumplab
