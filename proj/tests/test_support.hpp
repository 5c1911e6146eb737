#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "rigidmv/matrix.hpp"
#include "rigidmv/random.hpp"

namespace rigidmv::testing {

// Determinant by the permutation expansion; independent of the library's
// elimination code.
template <typename T>
T LeibnizDet(const Mat<T>& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  T total(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    T term(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline Mat<Rational> RandomIntMatrix(Rng& rng, std::size_t rows, std::size_t cols, int lo = -9,
                                     int hi = 9) {
  Mat<Rational> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.UniformInt(lo, hi);
  return m;
}

inline Vec<Rational> RandomIntVector(Rng& rng, std::size_t n, int lo = -9, int hi = 9) {
  Vec<Rational> v(n);
  for (auto& x : v) x = rng.UniformInt(lo, hi);
  return v;
}

inline Vec<Rational> RandomNonzeroVector(Rng& rng, std::size_t n, int lo = -9, int hi = 9) {
  while (true) {
    Vec<Rational> v = RandomIntVector(rng, n, lo, hi);
    for (const auto& x : v)
      if (x != 0) return v;
  }
}

// Rank-one test for two vectors without the library's Proportional.
inline bool ParallelExact(const Vec<Rational>& a, const Vec<Rational>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

// Cross-product matrix [t]_x with [t]_x y = t x y.
template <typename T>
Mat<T> Skew(const Vec<T>& t) {
  return Mat<T>{{T(0), T(-t[2]), T(t[1])}, {T(t[2]), T(0), T(-t[0])}, {T(-t[1]), T(t[0]), T(0)}};
}

// Runs f and reports whether it threw rigidmv::Error with the given code.
template <typename F>
::testing::AssertionResult ThrowsCode(ErrorCode code, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.code() == code) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "wrong code: " << e.what();
  }
  return ::testing::AssertionFailure() << "no exception, expected " << ErrorCodeName(code);
}

inline Mat<Rational> CameraIe(int shift) {
  return Mat<Rational>{{1, 0, 0, shift}, {0, 1, 0, 0}, {0, 0, 1, 0}};
}

inline ProjectivePoint<Rational> Pt(std::initializer_list<long> c) {
  Vec<Rational> v;
  for (long x : c) v.emplace_back(x);
  return ProjectivePoint<Rational>(v);
}

}  // namespace rigidmv::testing
