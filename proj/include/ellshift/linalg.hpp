// Dense exact linear algebra over a field: rank, right kernel, determinant.
// Sizes here are small (dozens), so plain Gaussian elimination with exact
// division is the right tool.
#ifndef ELLSHIFT_LINALG_HPP
#define ELLSHIFT_LINALG_HPP

#include <utility>
#include <vector>

#include "ellshift/error.hpp"

namespace ellshift {

template <class F>
using Matrix = std::vector<std::vector<F>>;

template <class F>
struct Echelon {
  Matrix<F> rref;
  std::vector<int> pivot_cols;
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

template <class F>
Echelon<F> reduced_row_echelon(Matrix<F> m) {
  Echelon<F> out;
  if (m.empty()) return out;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && is_zero(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    F inv = one_of(m[r][c]) / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      F f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    out.pivot_cols.push_back(static_cast<int>(c));
    ++r;
  }
  out.rref = std::move(m);
  return out;
}

template <class F>
int rank(const Matrix<F>& m) {
  return reduced_row_echelon(m).rank();
}

// Basis of the right kernel {x : M x = 0}; vectors of length cols.
template <class F>
std::vector<std::vector<F>> kernel_basis(const Matrix<F>& m, const F& one) {
  if (m.empty()) return {};
  size_t cols = m[0].size();
  Echelon<F> e = reduced_row_echelon(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<F>> basis;
  for (size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<F> v(cols, F{});
    v[fc] = one;
    for (size_t pi = 0; pi < e.pivot_cols.size(); ++pi) {
      int pc = e.pivot_cols[pi];
      v[pc] = F{} - e.rref[pi][fc];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
F determinant(Matrix<F> m, const F& one) {
  size_t n = m.size();
  for (auto& row : m)
    if (row.size() != n) throw Error("Internal", "determinant of non-square matrix");
  F det = one;
  bool neg = false;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && is_zero(m[p][c])) ++p;
    if (p == n) return F{};
    if (p != c) {
      std::swap(m[p], m[c]);
      neg = !neg;
    }
    det = det * m[c][c];
    F inv = one / m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (is_zero(m[i][c])) continue;
      F f = m[i][c] * inv;
      for (size_t j = c; j < n; ++j) m[i][j] = m[i][j] - f * m[c][j];
    }
  }
  return neg ? F{} - det : det;
}

}  // namespace ellshift

#endif
