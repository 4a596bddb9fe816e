#pragma once

// Square matrices over a ring of F_q-valued entries (rational functions or
// Laurent polynomials). Entries are stored row-major.

#include "weylwalk/laurent.hpp"
#include "weylwalk/rational_function.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weylwalk {

template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  SquareMatrix(std::size_t n, int q) : n_(n), q_(q), a_(n * n, T::zero(q)) {}

  static SquareMatrix identity(std::size_t n, int q) {
    SquareMatrix m(n, q);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T::one(q);
    return m;
  }
  static SquareMatrix diagonal(const std::vector<T>& d, int q) {
    SquareMatrix m(d.size(), q);
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t size() const { return n_; }
  int q() const { return q_; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < n_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_columns(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < n_; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }
  // row_dst += f * row_src
  void add_row_multiple(std::size_t dst, std::size_t src, const T& f) {
    if (f.is_zero()) return;
    for (std::size_t k = 0; k < n_; ++k)
      if (!(*this)(src, k).is_zero()) (*this)(dst, k) += f * (*this)(src, k);
  }
  // col_dst += f * col_src
  void add_column_multiple(std::size_t dst, std::size_t src, const T& f) {
    if (f.is_zero()) return;
    for (std::size_t k = 0; k < n_; ++k)
      if (!(*this)(k, src).is_zero()) (*this)(k, dst) += f * (*this)(k, src);
  }
  void scale_row(std::size_t i, const T& f) {
    for (std::size_t k = 0; k < n_; ++k) (*this)(i, k) = f * (*this)(i, k);
  }
  void scale_column(std::size_t j, const T& f) {
    for (std::size_t k = 0; k < n_; ++k) (*this)(k, j) = f * (*this)(k, j);
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
    SquareMatrix c(a.n_, a.q_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const T& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < a.n_; ++j)
          if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }

 private:
  std::size_t n_ = 0;
  int q_ = 2;
  std::vector<T> a_;
};

using RationalFunctionMatrix = SquareMatrix<RationalFunction>;
using LaurentMatrix = SquareMatrix<LaurentPolynomial>;

}  // namespace weylwalk
