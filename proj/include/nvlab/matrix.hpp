#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nvlab/errors.hpp"

namespace nvlab {

/// Dense row-major matrix over one of the library's entry rings.
///
/// The matrix carries its zero element so that empty products and freshly
/// sized blocks know which coefficient ring they live over.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T zero)
      : rows_(rows), cols_(cols), zero_(std::move(zero)), data_(rows * cols, zero_) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }
  const T& zero() const noexcept { return zero_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
    Matrix out(nr, nc, zero_);
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    }
    return out;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionMismatch("set_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }
  }

  Matrix select(const std::vector<std::size_t>& row_ids, const std::vector<std::size_t>& col_ids) const {
    Matrix out(row_ids.size(), col_ids.size(), zero_);
    for (std::size_t i = 0; i < row_ids.size(); ++i) {
      for (std::size_t j = 0; j < col_ids.size(); ++j) out(i, j) = (*this)(row_ids[i], col_ids[j]);
    }
    return out;
  }

  Matrix transposed() const {
    Matrix out(cols_, rows_, zero_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    }
    return out;
  }

  Matrix operator-() const {
    Matrix out = *this;
    for (auto& x : out.data_) x = -x;
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  T zero_{};
  std::vector<T> data_;
};

template <typename T>
Matrix<T> identity_matrix(std::size_t n, const T& zero) {
  Matrix<T> out(n, n, zero);
  const T one = one_like(zero);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = one;
  return out;
}

template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix sum shape mismatch");
  Matrix<T> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  }
  return out;
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  return a + (-b);
}

/// Generic sum of products; ring types may provide a faster overload found by lookup.
template <typename T>
T sum_of_products(const std::vector<std::pair<const T*, const T*>>& pairs, const T& zero) {
  T acc = zero;
  for (const auto& [x, y] : pairs) {
    if (!x->is_zero() && !y->is_zero()) acc += *x * *y;
  }
  return acc;
}

/// Entry (i, j) of a * b.
template <typename T>
T entry_product(const Matrix<T>& a, const Matrix<T>& b, std::size_t i, std::size_t j) {
  std::vector<std::pair<const T*, const T*>> pairs;
  pairs.reserve(a.cols());
  for (std::size_t k = 0; k < a.cols(); ++k) pairs.emplace_back(&a(i, k), &b(k, j));
  return sum_of_products(pairs, a.zero());
}

/// Reference product; the OpenMP kernel in linalg.hpp must agree with it exactly.
template <typename T>
Matrix<T> multiply_serial(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matrix product " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            " * " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Matrix<T> out(a.rows(), b.cols(), a.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      out(i, j) = entry_product(a, b, i, j);
    }
  }
  return out;
}

/// Entrywise image of a matrix under f; `zero` is the zero of the target ring.
template <typename U, typename T, typename F>
Matrix<U> map_entries(const Matrix<T>& m, const U& zero, F f) {
  Matrix<U> out(m.rows(), m.cols(), zero);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = f(m(i, j));
  }
  return out;
}

}  // namespace nvlab
