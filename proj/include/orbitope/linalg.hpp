#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "orbitope/rational.hpp"

namespace orbitope {

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols, T init = T()) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, init) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  std::vector<T> apply(const std::vector<T>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("Matrix apply dimension mismatch");
    std::vector<T> y(rows_, T());
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

 private:
  int rows_, cols_;
  std::vector<T> a_;
};

using MatD = Matrix<double>;
using MatQ = Matrix<Rat>;

/// Symmetric matrix; only the upper triangle is stored, so symmetry is exact
/// by construction.
template <class T>
class SymMat {
 public:
  SymMat() : n_(0) {}
  explicit SymMat(int n, T init = T()) : n_(n), a_(static_cast<size_t>(n) * (n + 1) / 2, init) {}

  static SymMat identity(int n) {
    SymMat m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  int dim() const { return n_; }

  T& at(int i, int j) {
    if (i > j) std::swap(i, j);
    return a_[static_cast<size_t>(i) * (2 * n_ - i - 1) / 2 + j];
  }
  const T& at(int i, int j) const {
    if (i > j) std::swap(i, j);
    return a_[static_cast<size_t>(i) * (2 * n_ - i - 1) / 2 + j];
  }

  T trace() const {
    T t = T();
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
  }

  Matrix<T> full() const {
    Matrix<T> m(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m(i, j) = at(i, j);
    return m;
  }

  std::vector<T> apply(const std::vector<T>& x) const {
    std::vector<T> y(n_, T());
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) y[i] += at(i, j) * x[j];
    return y;
  }

  /// x^T M x.
  T quad(const std::vector<T>& x) const {
    T s = T();
    for (int i = 0; i < n_; ++i) {
      s += at(i, i) * x[i] * x[i];
      for (int j = i + 1; j < n_; ++j) s += T(2) * at(i, j) * x[i] * x[j];
    }
    return s;
  }

 private:
  int n_;
  std::vector<T> a_;
};

using SymD = SymMat<double>;
using SymQ = SymMat<Rat>;

inline SymD to_double(const SymQ& m) {
  SymD d(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i; j < m.dim(); ++j) d.at(i, j) = m.at(i, j).to_double();
  return d;
}

inline std::vector<double> to_double(const std::vector<Rat>& v) {
  std::vector<double> d(v.size());
  for (size_t i = 0; i < v.size(); ++i) d[i] = v[i].to_double();
  return d;
}

struct EigResult {
  std::vector<double> values;  // sorted descending
  MatD vectors;                // orthonormal columns, vectors.col(i) <-> values[i]
  int sweeps = 0;
};

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations with a
/// fixed sweep order (deterministic). Throws if the off-diagonal mass fails to
/// converge within the sweep cap; the message carries the residual.
EigResult sym_eig(const SymD& q);

// Exact rational linear algebra (Gauss with full pivoting on magnitude-free
// exact pivots; sizes here are small).

/// Rank of a rational matrix.
int rank_rat(MatQ a);

/// Inverse of a square nonsingular rational matrix; throws if singular.
MatQ inverse_rat(MatQ a);

/// Indices of a maximal set of linearly independent columns.
std::vector<int> independent_columns(MatQ a);

/// Moore-Penrose pseudo-inverse of a symmetric PSD rational matrix, computed
/// as B (B^T M B)^{-1} B^T where B holds a column basis of range(M).
SymQ pseudo_inverse_rat(const SymQ& m);

/// Orthogonal projector onto range(M): B (B^T B)^{-1} B^T.
SymQ range_projector_rat(const SymQ& m);

}  // namespace orbitope
