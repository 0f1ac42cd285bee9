#ifndef HYP2_MATRIX_HPP
#define HYP2_MATRIX_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyp2/field.hpp"

namespace hyp2 {

using Vec = std::vector<Fe>;

/// Dense row-major matrix over GF(2^n). Arithmetic takes the field context
/// explicitly; the matrix itself only stores bitmasks.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = kOne;
    return m;
  }

  /// Matrix whose rows are the given vectors (all of length cols).
  static Matrix from_rows(std::span<const Vec> rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionMismatch("row length differs from column count");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  Fe& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  [[nodiscard]] Fe operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] std::span<const Fe> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  [[nodiscard]] Vec row_vec(std::size_t i) const { return {row(i).begin(), row(i).end()}; }
  [[nodiscard]] Vec col_vec(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  [[nodiscard]] bool is_zero() const {
    for (Fe x : data_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Fe> data_;
};

inline Matrix mul(const FieldCtx& k, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Fe x = a(i, l);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += k.mul(x, b(l, j));
    }
  }
  return c;
}

inline Vec apply(const FieldCtx& k, const Matrix& a, std::span<const Fe> v) {
  if (a.cols() != v.size()) throw DimensionMismatch("matrix-vector shape mismatch");
  Vec out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Fe acc = kZero;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += k.mul(a(i, j), v[j]);
    out[i] = acc;
  }
  return out;
}

/// Entrywise square (twist by Frobenius).
inline Matrix frob(const FieldCtx& k, Matrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = k.square(m(i, j));
  return m;
}

/// Entrywise square root (twist by inverse Frobenius).
inline Matrix frob_inv(const FieldCtx& k, Matrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = k.sqrt(m(i, j));
  return m;
}

inline Vec frob(const FieldCtx& k, Vec v) {
  for (auto& x : v) x = k.square(x);
  return v;
}

inline Vec frob_inv(const FieldCtx& k, Vec v) {
  for (auto& x : v) x = k.sqrt(x);
  return v;
}

inline Vec scale(const FieldCtx& k, Vec v, Fe a) {
  for (auto& x : v) x = k.mul(x, a);
  return v;
}

inline Vec add(Vec a, std::span<const Fe> b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline bool is_zero(std::span<const Fe> v) {
  for (Fe x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

/// In-place reduced row echelon form; drops zero rows. Returns pivot columns.
inline std::vector<std::size_t> rref_in_place(const FieldCtx& k, Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Fe inv = k.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = k.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const Fe f = m(i, c);
      if (f.is_zero()) continue;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) += k.mul(f, m(r, j));
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix trimmed(r, m.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) trimmed(i, j) = m(i, j);
  m = std::move(trimmed);
  return pivots;
}

inline Matrix rref(const FieldCtx& k, Matrix m) {
  rref_in_place(k, m);
  return m;
}

inline std::size_t rank(const FieldCtx& k, Matrix m) { return rref_in_place(k, m).size(); }

/// Basis (as rows) of {x : m x = 0}.
inline Matrix nullspace(const FieldCtx& k, Matrix m) {
  const std::size_t n = m.cols();
  const auto pivots = rref_in_place(k, m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix basis(n - pivots.size(), n);
  std::size_t out = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    basis(out, free) = kOne;
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(out, pivots[i]) = m(i, free);
    ++out;
  }
  return basis;
}

/// Inverse of a square matrix; throws DivisionByZero when singular.
inline Matrix inverse(const FieldCtx& k, const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw DimensionMismatch("inverse of a non-square matrix");
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = kOne;
  }
  const auto pivots = rref_in_place(k, aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw DivisionByZero("singular matrix");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

inline Matrix block_diagonal(std::span<const Matrix> blocks) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out(rows, cols);
  std::size_t r0 = 0;
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

}  // namespace hyp2

#endif  // HYP2_MATRIX_HPP
