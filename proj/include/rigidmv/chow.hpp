#pragma once

#include <utility>

#include "rigidmv/linalg.hpp"
#include "rigidmv/projective.hpp"

namespace rigidmv {

/// Symmetric 3x3 matrix of the conic (u.x)(v.x) + (v.x)(u.x), i.e. the
/// point of Sym_2(P^2) representing the unordered pair {u, v}.
template <typename T>
class ChowMatrix {
 public:
  /// Throws kShapeMismatch unless m is 3x3 and symmetric.
  explicit ChowMatrix(Mat<T> m);

  const Mat<T>& matrix() const { return m_; }
  const T& operator()(int i, int j) const { return m_(i, j); }
  T Determinant() const { return Det(m_); }

 private:
  Mat<T> m_;
};

/// a_ii = 2 u_i v_i, a_ij = u_i v_j + u_j v_i.
template <typename T>
ChowMatrix<T> ChowMap(const ProjectivePoint<T>& u, const ProjectivePoint<T>& v);

/// Inverse of ChowMap up to scale and order. The singular point p of the
/// line pair satisfies adj(a) = -p p^T; then a - [p]_x = 2 u v^T has rank
/// one. Throws kRankThree, kComplexSplit (conjugate line pair) or, on the
/// exact backend, kIrrationalSplit when the lines are real but not rational.
template <typename T>
std::pair<ProjectivePoint<T>, ProjectivePoint<T>> ChowFactor(
    const ChowMatrix<T>& a, const Tolerances& tol = {});

/// True when {a1, b1} and {a2, b2} agree as unordered pairs of projective points.
template <typename T>
bool SameUnorderedPair(const std::pair<ProjectivePoint<T>, ProjectivePoint<T>>& x,
                       const std::pair<ProjectivePoint<T>, ProjectivePoint<T>>& y,
                       const Tolerances& tol = {});

}  // namespace rigidmv
