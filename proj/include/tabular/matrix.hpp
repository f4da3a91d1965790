#ifndef TABULAR_MATRIX_HPP
#define TABULAR_MATRIX_HPP

#include <vector>

#include "tabular/laurent.hpp"

namespace tabular {

/// Dense row-major matrix over an exact scalar (LaurentPoly, FieldScalar).
template <typename T>
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, T fill = T())
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& at(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const DenseMatrix& a, const DenseMatrix& b) {
    return !(a == b);
  }

  DenseMatrix operator*(const DenseMatrix& o) const {
    DenseMatrix out(rows_, o.cols_);
    if (cols_ == 0) return out;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < o.cols_; ++j) {
        // seed the accumulator from the first term so field-tagged scalars
        // never mix with default-constructed ones
        T acc = at(i, 0) * o.at(0, j);
        for (int k = 1; k < cols_; ++k) acc = acc + at(i, k) * o.at(k, j);
        out.at(i, j) = std::move(acc);
      }
    return out;
  }
  DenseMatrix operator+(const DenseMatrix& o) const {
    DenseMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
      out.data_[k] = data_[k] + o.data_[k];
    return out;
  }
  DenseMatrix operator-(const DenseMatrix& o) const {
    DenseMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
      out.data_[k] = data_[k] - o.data_[k];
    return out;
  }

private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using FieldMatrix = DenseMatrix<FieldScalar>;
using LaurentMatrix = DenseMatrix<LaurentPoly>;

inline FieldMatrix field_identity(const Field& f, int n) {
  FieldMatrix m(n, n, FieldScalar::zero(f));
  for (int i = 0; i < n; ++i) m.at(i, i) = FieldScalar::one(f);
  return m;
}

inline bool is_zero_matrix(const FieldMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) return false;
  return true;
}

/// Kernel basis of an m x n matrix by Gaussian elimination; vectors are
/// rows of the returned list.
inline std::vector<std::vector<FieldScalar>> kernel_basis(const Field& f,
                                                          FieldMatrix m) {
  const int rows = m.rows(), cols = m.cols();
  std::vector<int> pivot_col_of_row;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (!m.at(i, c).is_zero()) { pivot = i; break; }
    if (pivot < 0) continue;
    for (int j = 0; j < cols; ++j) std::swap(m.at(r, j), m.at(pivot, j));
    FieldScalar inv = m.at(r, c).inverse();
    for (int j = 0; j < cols; ++j) m.at(r, j) = m.at(r, j) * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      FieldScalar factor = m.at(i, c);
      for (int j = 0; j < cols; ++j)
        m.at(i, j) = m.at(i, j) - factor * m.at(r, j);
    }
    pivot_col_of_row.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col_of_row) is_pivot[c] = true;
  std::vector<std::vector<FieldScalar>> kernel;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<FieldScalar> v(cols, FieldScalar::zero(f));
    v[c] = FieldScalar::one(f);
    for (int i = 0; i < r; ++i)
      v[pivot_col_of_row[i]] = -m.at(i, c);
    kernel.push_back(std::move(v));
  }
  return kernel;
}

/// Evaluate a Laurent matrix at v = r.
inline FieldMatrix specialize_matrix(const LaurentMatrix& m,
                                     const FieldScalar& r) {
  FieldMatrix out(m.rows(), m.cols(), FieldScalar::zero(r.field()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      out.at(i, j) = specialize(m.at(i, j), r);
  return out;
}

}  // namespace tabular

#endif
