#pragma once

#include <optional>
#include <vector>

#include "rigidmv/matrix.hpp"

namespace rigidmv {

struct RankReport {
  int rank = 0;
  /// Singular values in decreasing order (float backend only).
  std::vector<double> pivots;
  /// Relative threshold that was applied (float backend only).
  double tolerance = 0.0;
};

/// Determinant. Exact: fraction-free Bareiss elimination. Float: partial
/// pivoting LU.
template <typename T>
T Det(const Mat<T>& m);

/// Exact: Bareiss elimination. Float: singular values above
/// tol.rank * largest.
template <typename T>
RankReport Rank(const Mat<T>& m, const Tolerances& tol = {});

/// A nonzero vector spanning a one-dimensional kernel. The exact backend
/// returns a primitive integer representative. Throws kNullityZero or
/// kNullityTooLarge when the kernel is not a line.
template <typename T>
Vec<T> KernelVector(const Mat<T>& m, const Tolerances& tol = {});

/// Basis of the right kernel (possibly empty).
template <typename T>
std::vector<Vec<T>> KernelBasis(const Mat<T>& m, const Tolerances& tol = {});

/// For a k x (k+1) matrix m returns w with w_i = (-1)^i det(m without
/// column i), 0-based i. Equivalently (-1)^(i+1) with 1-based columns.
/// m * w = 0 always.
template <typename T>
Vec<T> SignedMaximalMinors(const Mat<T>& m);

/// Inverse of a square matrix; throws kSingularTransform when singular.
template <typename T>
Mat<T> Inverse(const Mat<T>& m, const Tolerances& tol = {});

/// All maximal (c x c) minors of an r x c matrix with r >= c, one per
/// choice of retained rows in lexicographic order.
template <typename T>
Vec<T> MaximalRowMinors(const Mat<T>& m);

/// Scales a rational vector to a primitive integer vector (gcd 1), keeping
/// the direction.
Vec<Rational> ClearDenominators(const Vec<Rational>& v);

}  // namespace rigidmv
