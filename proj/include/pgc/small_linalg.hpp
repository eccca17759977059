#pragma once

#include <array>

#include "pgc/errors.hpp"
#include "pgc/jet.hpp"

namespace pgc {

// Dense matrix over a jet scalar, dimensions at most 8x8. Solves chain the
// derivative information of their entries, which is how factorization maps
// stay differentiable through pointwise least squares.
template <class T>
class JMat {
 public:
  JMat() = default;
  JMat(int r, int c) : r_(r), c_(c) {
    if (r > 8 || c > 8) throw DimensionMismatchError("JMat: dimension cap is 8");
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * c_ + j)]; }
  const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * c_ + j)]; }

  JMat transpose() const {
    JMat t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend JMat operator*(const JMat& a, const JMat& b) {
    if (a.c_ != b.r_) throw DimensionMismatchError("JMat product");
    JMat out(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int j = 0; j < b.c_; ++j) {
        T acc(0.0);
        for (int l = 0; l < a.c_; ++l) acc = acc + a(i, l) * b(l, j);
        out(i, j) = acc;
      }
    return out;
  }
  friend JMat operator-(const JMat& a, const JMat& b) {
    JMat out(a.r_, a.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int j = 0; j < a.c_; ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
  }
  friend JMat operator*(double s, const JMat& a) {
    JMat out(a.r_, a.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int j = 0; j < a.c_; ++j) out(i, j) = a(i, j) * s;
    return out;
  }

  double max_abs_value() const {
    double m = 0.0;
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) m = std::max(m, std::abs(jet_value((*this)(i, j))));
    return m;
  }

 private:
  int r_ = 0, c_ = 0;
  std::array<T, 64> a_{};
};

// Gaussian elimination with partial pivoting on the value parts.
template <class T>
JMat<T> solve_square(JMat<T> A, JMat<T> B) {
  const int n = A.rows();
  if (A.cols() != n || B.rows() != n) throw DimensionMismatchError("solve_square shape");
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(jet_value(A(col, col)));
    for (int r = col + 1; r < n; ++r) {
      double v = std::abs(jet_value(A(r, col)));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) throw DegenerateInputError("solve_square: singular matrix");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(A(col, j), A(piv, j));
      for (int j = 0; j < B.cols(); ++j) std::swap(B(col, j), B(piv, j));
    }
    for (int r = col + 1; r < n; ++r) {
      T m = A(r, col) / A(col, col);
      for (int j = col; j < n; ++j) A(r, j) = A(r, j) - m * A(col, j);
      for (int j = 0; j < B.cols(); ++j) B(r, j) = B(r, j) - m * B(col, j);
    }
  }
  JMat<T> X(n, B.cols());
  for (int col = n - 1; col >= 0; --col) {
    for (int j = 0; j < B.cols(); ++j) {
      T acc = B(col, j);
      for (int l = col + 1; l < n; ++l) acc = acc - A(col, l) * X(l, j);
      X(col, j) = acc / A(col, col);
    }
  }
  return X;
}

// Least squares via normal equations; requires full column rank of A, which
// the chart constructions guarantee away from their declared singular loci.
template <class T>
JMat<T> least_squares(const JMat<T>& A, const JMat<T>& B) {
  JMat<T> At = A.transpose();
  return solve_square(At * A, At * B);
}

template <class T>
JMat<T> inverse(const JMat<T>& A) {
  JMat<T> I(A.rows(), A.rows());
  for (int i = 0; i < A.rows(); ++i) I(i, i) = T(1.0);
  return solve_square(A, I);
}

template <class T>
T determinant(JMat<T> A) {
  const int n = A.rows();
  T det(1.0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(jet_value(A(col, col)));
    for (int r = col + 1; r < n; ++r)
      if (std::abs(jet_value(A(r, col))) > best) {
        best = std::abs(jet_value(A(r, col)));
        piv = r;
      }
    if (best == 0.0) return T(0.0);
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(A(col, j), A(piv, j));
      det = -det;
    }
    det = det * A(col, col);
    for (int r = col + 1; r < n; ++r) {
      T m = A(r, col) / A(col, col);
      for (int j = col; j < n; ++j) A(r, j) = A(r, j) - m * A(col, j);
    }
  }
  return det;
}

}  // namespace pgc
