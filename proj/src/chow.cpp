#include "rigidmv/chow.hpp"

#include <cmath>

namespace rigidmv {
namespace {

template <typename T>
bool Positive(const T& x, double tol) {
  if constexpr (ScalarTraits<T>::kExact) {
    return sgn(x) > 0;
  } else {
    return x > tol;
  }
}

template <typename T>
bool SquareRoot(const T& x, T* root) {
  if constexpr (ScalarTraits<T>::kExact) {
    return RationalSqrt(x, root);
  } else {
    *root = std::sqrt(std::max(x, 0.0));
    return true;
  }
}

template <typename T>
int LargestDiagonal(const Mat<T>& m) {
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (ScalarTraits<T>::Abs(m(i, i)) > ScalarTraits<T>::Abs(m(best, best))) best = i;
  return best;
}

template <typename T>
Mat<T> Adjugate(const Mat<T>& a) {
  Mat<T> adj(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj(i, j) = a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0);
    }
  return adj;
}

}  // namespace

template <typename T>
ChowMatrix<T>::ChowMatrix(Mat<T> m) : m_(std::move(m)) {
  if (m_.rows() != 3 || m_.cols() != 3) {
    throw Error(ErrorCode::kShapeMismatch, "Chow matrix must be 3x3");
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      bool equal;
      if constexpr (ScalarTraits<T>::kExact) {
        equal = m_(i, j) == m_(j, i);
      } else {
        equal = std::abs(m_(i, j) - m_(j, i)) <=
                1e-12 * std::max(1.0, std::abs(m_(i, j)) + std::abs(m_(j, i)));
      }
      if (!equal) throw Error(ErrorCode::kShapeMismatch, "Chow matrix must be symmetric");
    }
}

template <typename T>
ChowMatrix<T> ChowMap(const ProjectivePoint<T>& u, const ProjectivePoint<T>& v) {
  if (u.size() != 3 || v.size() != 3) {
    throw Error(ErrorCode::kShapeMismatch, "Chow map takes image points");
  }
  Mat<T> a(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = u[i] * v[j] + u[j] * v[i];
  return ChowMatrix<T>(std::move(a));
}

template <typename T>
std::pair<ProjectivePoint<T>, ProjectivePoint<T>> ChowFactor(const ChowMatrix<T>& chow,
                                                             const Tolerances& tol) {
  const Mat<T>& a = chow.matrix();
  double scale = 0;
  for (const T& x : a.data()) scale = std::max(scale, std::abs(ScalarTraits<T>::ToDouble(x)));
  if (scale == 0) throw Error(ErrorCode::kZeroPoint, "Chow matrix is zero");

  const int rank = Rank(a, tol).rank;
  if (rank == 3) throw Error(ErrorCode::kRankThree, "Chow matrix has full rank");
  if (rank == 1) {
    // Double line: a = c u u^T.
    const Vec<T> u = a.Col(LargestDiagonal(a));
    ProjectivePoint<T> p(u);
    return {p, p};
  }

  const Mat<T> adj = Adjugate(a);
  const int i = LargestDiagonal(adj);
  const double adj_tol = tol.zero * scale * scale;
  if (Positive(adj(i, i), adj_tol)) {
    throw Error(ErrorCode::kComplexSplit, "conic splits into complex conjugate lines");
  }
  T root;
  if (!SquareRoot(T(-adj(i, i)), &root)) {
    throw Error(ErrorCode::kIrrationalSplit, "line pair is not defined over the rationals");
  }
  Vec<T> p(3);
  for (int j = 0; j < 3; ++j) p[j] = j == i ? root : T(-adj(i, j) / root);

  // a - [p]_x = 2 u v^T.
  Mat<T> r = a;
  r(0, 1) += p[2];
  r(1, 0) -= p[2];
  r(0, 2) -= p[1];
  r(2, 0) += p[1];
  r(1, 2) += p[0];
  r(2, 1) -= p[0];
  std::size_t br = 0, bc = 0;
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y)
      if (ScalarTraits<T>::Abs(r(x, y)) > ScalarTraits<T>::Abs(r(br, bc))) {
        br = x;
        bc = y;
      }
  return {ProjectivePoint<T>(r.Col(bc)), ProjectivePoint<T>(r.Row(br))};
}

template <typename T>
bool SameUnorderedPair(const std::pair<ProjectivePoint<T>, ProjectivePoint<T>>& x,
                       const std::pair<ProjectivePoint<T>, ProjectivePoint<T>>& y,
                       const Tolerances& tol) {
  return (ProjectivelyEqual(x.first, y.first, tol) &&
          ProjectivelyEqual(x.second, y.second, tol)) ||
         (ProjectivelyEqual(x.first, y.second, tol) &&
          ProjectivelyEqual(x.second, y.first, tol));
}

#define RIGIDMV_INSTANTIATE(T)                                                      \
  template class ChowMatrix<T>;                                                     \
  template ChowMatrix<T> ChowMap(const ProjectivePoint<T>&, const ProjectivePoint<T>&); \
  template std::pair<ProjectivePoint<T>, ProjectivePoint<T>> ChowFactor(            \
      const ChowMatrix<T>&, const Tolerances&);                                     \
  template bool SameUnorderedPair(                                                  \
      const std::pair<ProjectivePoint<T>, ProjectivePoint<T>>&,                     \
      const std::pair<ProjectivePoint<T>, ProjectivePoint<T>>&, const Tolerances&);

RIGIDMV_INSTANTIATE(Rational)
RIGIDMV_INSTANTIATE(double)

}  // namespace rigidmv
