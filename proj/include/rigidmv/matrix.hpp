#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "rigidmv/error.hpp"
#include "rigidmv/scalar.hpp"

namespace rigidmv {

template <typename T>
using Vec = std::vector<T>;

/// Dense row-major matrix with fixed dimensions.
template <typename T>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Mat(std::size_t rows, std::size_t cols, std::vector<T> row_major)
      : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (data_.size() != rows * cols) {
      throw Error(ErrorCode::kShapeMismatch,
                  "expected " + std::to_string(rows * cols) + " entries, got " +
                      std::to_string(data_.size()));
    }
  }
  Mat(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw Error(ErrorCode::kShapeMismatch, "ragged initializer");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Mat Identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const T& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const T& at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) {
      throw Error(ErrorCode::kIndexOutOfRange, "matrix entry out of range");
    }
    return data_[r * cols_ + c];
  }

  std::span<const T> data() const { return data_; }

  Vec<T> Row(std::size_t r) const {
    return Vec<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  Vec<T> Col(std::size_t c) const {
    Vec<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  Mat WithoutRow(std::size_t skip) const {
    Mat out(rows_ - 1, cols_);
    for (std::size_t r = 0, o = 0; r < rows_; ++r) {
      if (r == skip) continue;
      for (std::size_t c = 0; c < cols_; ++c) out(o, c) = (*this)(r, c);
      ++o;
    }
    return out;
  }
  Mat WithoutCol(std::size_t skip) const {
    Mat out(rows_, cols_ - 1);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0, o = 0; c < cols_; ++c) {
        if (c == skip) continue;
        out(r, o++) = (*this)(r, c);
      }
    }
    return out;
  }
  Mat Block(std::size_t r0, std::size_t c0, std::size_t nr,
            std::size_t nc) const {
    Mat out(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
    return out;
  }

  Mat Transpose() const {
    Mat out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  Mat operator*(const Mat& rhs) const {
    if (cols_ != rhs.rows_) {
      throw Error(ErrorCode::kShapeMismatch, "matrix product dimensions");
    }
    Mat out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(r, k);
        if (a == 0) continue;
        for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
      }
    return out;
  }

  Vec<T> operator*(std::span<const T> v) const {
    if (v.size() != cols_) {
      throw Error(ErrorCode::kShapeMismatch, "matrix-vector dimensions");
    }
    Vec<T> out(rows_, T(0));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  Mat operator*(const T& s) const {
    Mat out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
  }

  bool operator==(const Mat& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           data_ == other.data_;
  }

  template <typename U>
  Mat<U> Cast() const {
    std::vector<U> out;
    out.reserve(data_.size());
    for (const auto& x : data_) out.push_back(Convert<U>(x));
    return Mat<U>(rows_, cols_, std::move(out));
  }

 private:
  template <typename U>
  static U Convert(const T& x) {
    if constexpr (std::is_same_v<U, double> && std::is_same_v<T, Rational>) {
      return x.get_d();
    } else {
      return U(x);
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Vertical concatenation.
template <typename T>
Mat<T> StackRows(const Mat<T>& top, const Mat<T>& bottom) {
  if (top.cols() != bottom.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "stacked matrices differ in width");
  }
  Mat<T> out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t r = 0; r < top.rows(); ++r)
    for (std::size_t c = 0; c < top.cols(); ++c) out(r, c) = top(r, c);
  for (std::size_t r = 0; r < bottom.rows(); ++r)
    for (std::size_t c = 0; c < top.cols(); ++c)
      out(top.rows() + r, c) = bottom(r, c);
  return out;
}

template <typename T>
T Dot(std::span<const T> a, std::span<const T> b) {
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <typename T>
Vec<T> Cross3(std::span<const T> a, std::span<const T> b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

inline double Norm2(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace rigidmv
