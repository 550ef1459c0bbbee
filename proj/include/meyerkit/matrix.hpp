#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "meyerkit/numeric.hpp"

namespace meyerkit {

/// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionError("ragged matrix literal");
      for (const auto& v : row) data_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  /// Builds a matrix whose columns are the given vectors.
  static Matrix from_columns(const std::vector<std::vector<T>>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw DimensionError("column of wrong length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const { return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_}; }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k) == T(0)) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }

  friend std::vector<T> operator*(const Matrix& x, const std::vector<T>& v) {
    if (x.cols_ != v.size()) throw DimensionError("matrix-vector shape mismatch");
    std::vector<T> r(x.rows_, T(0));
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) r[i] += x(i, k) * v[k];
    return r;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using QuadMatrix = Matrix<QuadExt>;
using IntVector = std::vector<Integer>;

// ---------------------------------------------------------------------------
// Integer normal forms

/// Column Hermite form: M * U = H with U unimodular. The first `rank` columns
/// of H are in echelon form with positive pivots; the remaining columns are
/// zero, so the matching columns of U span the integer kernel of M.
struct HermiteForm {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;  ///< row of the pivot of column j < rank
};
HermiteForm column_hermite(const IntMatrix& M);

/// Smith form: P * M * Q = S with P, Q unimodular and S diagonal with
/// nonnegative entries s_1 | s_2 | ...
struct SmithForm {
  IntMatrix P;
  IntMatrix S;
  IntMatrix Q;
  std::vector<Integer> diag;  ///< min(rows, cols) diagonal entries of S
  std::size_t rank = 0;
};
SmithForm smith_form(const IntMatrix& M);

struct LatticeNormalForm {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
  std::vector<Integer> diag;
};
/// Hermite form, unimodular transform, rank and Smith invariants of M.
LatticeNormalForm lattice_normal_form(const IntMatrix& M);

Integer determinant(const IntMatrix& M);
/// Inverse of a unimodular matrix; throws if |det| != 1.
IntMatrix unimodular_inverse(const IntMatrix& M);
/// Basis (as columns) of {x in Z^cols : M x = 0}.
IntMatrix integer_kernel(const IntMatrix& M);
/// Some integer solution of M x = b, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& M, const IntVector& b);
/// The first `rank` columns of the Hermite form: a basis of the column lattice.
IntMatrix lattice_basis(const IntMatrix& generators);

// ---------------------------------------------------------------------------
// Linear algebra over Q(sqrt D)

QuadExt determinant(const QuadMatrix& M);
std::size_t rank(const QuadMatrix& M);
/// Inverse of a square matrix; throws SingularEmbedding when singular.
QuadMatrix inverse(const QuadMatrix& M);

QuadMatrix to_quad(const IntMatrix& M);
/// Entry-wise conversion back to integers; nullopt if some entry is not integral.
std::optional<IntMatrix> to_integer(const QuadMatrix& M);

std::string to_string(const IntMatrix& M);

}  // namespace meyerkit
