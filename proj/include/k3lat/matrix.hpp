#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "k3lat/arith.hpp"

namespace k3lat {

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      if (r.size() != cols_) throw Error("matrix rows of unequal length");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error("matrix rows of unequal length");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  void set_row(std::size_t i, const std::vector<T>& r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[target] += factor * row[source]
  void add_row(std::size_t target, std::size_t source, const T& factor) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(target, j) += factor * (*this)(source, j);
  }
  void add_col(std::size_t target, std::size_t source, const T& factor) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, target) += factor * (*this)(i, source);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error("matrix product: dimension mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
Matrix<T> operator*(const T& s, const Matrix<T>& a) {
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= s;
  return c;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("matrix sum: dimension mismatch");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

/// Row vector times matrix.
template <class T>
std::vector<T> operator*(const std::vector<T>& v, const Matrix<T>& m) {
  if (v.size() != m.rows()) throw Error("vector-matrix product: dimension mismatch");
  std::vector<T> out(m.cols(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);
std::optional<IntMatrix> to_integer(const RatMatrix& m);
std::optional<IntVector> to_integer(const RatVector& v);
bool is_integral(const RatMatrix& m);

/// Least common multiple of all denominators.
Integer common_denominator(const RatMatrix& m);
Integer common_denominator(const RatVector& v);

/// x * G * y^T
Rational bilinear(const RatVector& x, const RatMatrix& g, const RatVector& y);

/// rows * G * rows^T
RatMatrix gram_of(const RatMatrix& rows, const RatMatrix& g);

bool is_symmetric(const RatMatrix& m);

Rational determinant(const RatMatrix& m);
Integer determinant(const IntMatrix& m);
RatMatrix inverse(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);

/// Solves X * basis = rows for X, where basis has independent rows. Returns
/// nullopt when some row is outside the row span of basis.
std::optional<RatMatrix> solve_left(const RatMatrix& basis, const RatMatrix& rows);

/// Row Hermite normal form with zero rows removed: echelon, positive
/// pivots, entries above each pivot reduced into [0, pivot).
IntMatrix hermite_form(const IntMatrix& m);

/// Canonical basis of the Z-span of rational row generators.
RatMatrix lattice_basis(const RatMatrix& generators);

/// Basis (in Hermite form) of {x in Z^rows : x * m == 0}.
IntMatrix left_kernel(const IntMatrix& m);

RatMatrix block_diagonal(const RatMatrix& a, const RatMatrix& b);
RatMatrix vstack(const RatMatrix& a, const RatMatrix& b);
RatMatrix select_columns(const RatMatrix& m, const std::vector<std::size_t>& cols);
RatMatrix select_rows(const RatMatrix& m, const std::vector<std::size_t>& rows);

/// Congruence diagonalization over Q: basis * g * basis^T == diag(entries).
/// Zero entries appear exactly when g is degenerate.
struct SymmetricDiagonalization {
  RatVector entries;
  RatMatrix basis;
};
SymmetricDiagonalization diagonalize_symmetric(const RatMatrix& g);

}  // namespace k3lat
