#include "rigidmv/triangulate.hpp"

#include <cmath>

namespace rigidmv {
namespace {

// Copy of B with each block row and each image column scaled to unit norm,
// used for float rank decisions only.
Mat<double> Balanced(const BMatrix<double>& b) {
  Mat<double> m = b.matrix;
  for (int block = 0; block < 2; ++block) {
    double s = 0;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 4; ++c) s += m(3 * block + r, c) * m(3 * block + r, c);
    s = std::sqrt(s);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 4; ++c) m(3 * block + r, c) /= s;
  }
  for (int c = 4; c < 6; ++c) {
    double s = 0;
    for (int r = 0; r < 6; ++r) s += m(r, c) * m(r, c);
    s = std::sqrt(s);
    for (int r = 0; r < 6; ++r) m(r, c) /= s;
  }
  return m;
}

template <typename T>
int RankOfB(const BMatrix<T>& b, const Tolerances& tol) {
  if constexpr (ScalarTraits<T>::kExact) {
    return Rank(b.matrix, tol).rank;
  } else {
    return Rank(Balanced(b), tol).rank;
  }
}

template <typename T>
void CheckPair(const CameraRig<T>& rig, int j, int k) {
  if (j < 0 || k < 0 || j >= rig.size() || k >= rig.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "camera index out of range");
  }
  if (j == k) throw Error(ErrorCode::kInvalidArgument, "B^{jk} needs j != k");
}

}  // namespace

template <typename T>
BMatrix<T> AssembleB(const CameraRig<T>& rig, int j, int k,
                     const ProjectivePoint<T>& u_j,
                     const ProjectivePoint<T>& u_k) {
  CheckPair(rig, j, k);
  if (u_j.size() != 3 || u_k.size() != 3) {
    throw Error(ErrorCode::kShapeMismatch, "image points need 3 coordinates");
  }
  return BMatrix<T>{PairMatrix<T>(rig.camera(j).matrix(), rig.camera(k).matrix(),
                                  u_j.coords(), u_k.coords()),
                    j, k, u_j, u_k};
}

template <typename T>
Vec<T> Wedge5(const BMatrix<T>& b, int row) {
  if (row < 0 || row >= 6) throw Error(ErrorCode::kIndexOutOfRange, "row index must be 0..5");
  return SignedMaximalMinors(b.matrix.WithoutRow(row));
}

template <typename T>
std::array<T, 4> Wedge5TildeRaw(const BMatrix<T>& b, int row) {
  const Vec<T> w = Wedge5(b, row);
  return {w[0], w[1], w[2], w[3]};
}

template <typename T>
std::optional<ProjectivePoint<T>> Wedge5Tilde(const BMatrix<T>& b, int row,
                                              const Tolerances& tol) {
  const Vec<T> w = Wedge5(b, row);
  Vec<T> x(w.begin(), w.begin() + 4);
  double zero_tol = 0.0;
  if constexpr (!ScalarTraits<T>::kExact) {
    // Relative to the scale B's entries give a generic wedge.
    double scale = 1.0;
    for (double v : b.matrix.data()) scale = std::max(scale, std::abs(v));
    zero_tol = tol.zero * std::pow(scale, 5);
  }
  if (IsZeroVector<T>(x, zero_tol)) return std::nullopt;
  return ProjectivePoint<T>(std::move(x));
}

template <typename T>
TriangulabilityResult IsTriangulable(const CameraRig<T>& rig,
                                     const ImageTuple<T>& tuple) {
  if (!MultiviewMembership(rig, tuple).member) {
    throw Error(ErrorCode::kNotInVariety, "image tuple is not in the multiview variety");
  }
  const Tolerances& tol = rig.tolerances();
  TriangulabilityResult result;
  for (int j = 0; j < rig.size(); ++j) {
    for (int k = j + 1; k < rig.size(); ++k) {
      const auto b = AssembleB(rig, j, k, tuple[j], tuple[k]);
      if (RankOfB(b, tol) != 5) continue;
      for (int row = 0; row < 6; ++row) {
        if (Wedge5Tilde(b, row, tol)) {
          result.triangulable = true;
          result.witness = TriangulationWitness{j, k, row};
          return result;
        }
      }
    }
  }
  return result;
}

template <typename T>
TriangulationSolution<T> Triangulate(const CameraRig<T>& rig,
                                     const ImageTuple<T>& tuple) {
  const auto tri = IsTriangulable(rig, tuple);
  if (!tri.triangulable) {
    throw Error(ErrorCode::kNotTriangulable,
                "no camera pair has a rank-5 triangulation matrix");
  }
  const Tolerances& tol = rig.tolerances();
  const TriangulationWitness wit = *tri.witness;
  const auto b = AssembleB(rig, wit.j, wit.k, tuple[wit.j], tuple[wit.k]);
  const Vec<T> w = Wedge5(b, wit.row);

  TriangulationSolution<T> sol;
  sol.world = ProjectivePoint<T>(Vec<T>(w.begin(), w.begin() + 4));
  sol.lambdas = {T(-w[4]), T(-w[5])};
  sol.witness = wit;
  sol.rank_of_b = 5;

  // Every nonzero wedge from every rank-5 pair must agree with the witness.
  for (int j = 0; j < rig.size(); ++j) {
    for (int k = j + 1; k < rig.size(); ++k) {
      const auto bjk = AssembleB(rig, j, k, tuple[j], tuple[k]);
      if (RankOfB(bjk, tol) != 5) continue;
      for (int row = 0; row < 6; ++row) {
        const auto cand = Wedge5Tilde(bjk, row, tol);
        if (cand && !ProjectivelyEqual(*cand, sol.world, tol)) {
          throw Error(ErrorCode::kAmbiguousFloat,
                      "triangulation candidates disagree (pair " +
                          std::to_string(j) + "," + std::to_string(k) +
                          ", row " + std::to_string(row) + ")");
        }
      }
    }
  }

  sol.all_lambdas.resize(rig.size());
  for (int m = 0; m < rig.size(); ++m) {
    const Vec<T> image =
        rig.camera(m).matrix() * std::span<const T>(sol.world.coords());
    double zero_tol = 0.0;
    if constexpr (!ScalarTraits<T>::kExact) {
      zero_tol = tol.zero * Norm2(rig.camera(m).matrix().data()) *
                 Norm2(sol.world.coords());
    }
    if (IsZeroVector<T>(image, zero_tol)) {
      sol.all_lambdas[m] = T(0);
      continue;
    }
    if (!Proportional<T>(image, tuple[m].coords(), tol)) {
      throw Error(ErrorCode::kNotInVariety,
                  "reprojection into camera " + std::to_string(m) + " fails");
    }
    std::size_t r = 0;
    for (std::size_t i = 1; i < 3; ++i)
      if (ScalarTraits<T>::Abs(tuple[m][i]) > ScalarTraits<T>::Abs(tuple[m][r])) r = i;
    sol.all_lambdas[m] = image[r] / tuple[m][r];
  }
  return sol;
}

template <typename T>
RankDeficiencyLocus<T> ComputeRankDeficiencyLocus(const CameraRig<T>& rig,
                                                  int j, int k) {
  CheckPair(rig, j, k);
  const Tolerances& tol = rig.tolerances();
  // rank B <= 4 with rank [A_j; A_k] = 4 means (u_j, 0) and (0, u_k) both lie
  // in the column span of [A_j; A_k], i.e. are annihilated by its left kernel.
  const Mat<T> stacked = StackRows(rig.camera(j).matrix(), rig.camera(k).matrix());
  RankDeficiencyLocus<T> locus;
  if (Rank(stacked, tol).rank != 4) return locus;
  const auto left = KernelBasis(stacked.Transpose(), tol);  // two vectors in R^6
  Mat<T> lj(left.size(), 3), lk(left.size(), 3);
  for (std::size_t r = 0; r < left.size(); ++r)
    for (int c = 0; c < 3; ++c) {
      lj(r, c) = left[r][c];
      lk(r, c) = left[r][3 + c];
    }
  const auto kj = KernelBasis(lj, tol);
  const auto kk = KernelBasis(lk, tol);
  if (kj.size() != 1 || kk.size() != 1) return locus;
  locus.unique = true;
  locus.u_j = ProjectivePoint<T>(kj.front());
  locus.u_k = ProjectivePoint<T>(kk.front());
  return locus;
}

#define RIGIDMV_INSTANTIATE(T)                                                  \
  template BMatrix<T> AssembleB(const CameraRig<T>&, int, int,                  \
                                const ProjectivePoint<T>&,                      \
                                const ProjectivePoint<T>&);                     \
  template Vec<T> Wedge5(const BMatrix<T>&, int);                               \
  template std::array<T, 4> Wedge5TildeRaw(const BMatrix<T>&, int);            \
  template std::optional<ProjectivePoint<T>> Wedge5Tilde(const BMatrix<T>&, int, \
                                                         const Tolerances&);    \
  template TriangulabilityResult IsTriangulable(const CameraRig<T>&,            \
                                                const ImageTuple<T>&);          \
  template TriangulationSolution<T> Triangulate(const CameraRig<T>&,            \
                                                const ImageTuple<T>&);          \
  template RankDeficiencyLocus<T> ComputeRankDeficiencyLocus(const CameraRig<T>&, \
                                                             int, int);

RIGIDMV_INSTANTIATE(Rational)
RIGIDMV_INSTANTIATE(double)

}  // namespace rigidmv
