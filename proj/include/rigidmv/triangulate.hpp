#pragma once

#include <array>
#include <optional>

#include "rigidmv/camera.hpp"

namespace rigidmv {

/// B^{jk} = [A_j u_j 0; A_k 0 u_k] together with its source data.
template <typename T>
struct BMatrix {
  Mat<T> matrix;
  int j = 0;
  int k = 1;
  ProjectivePoint<T> u_j;
  ProjectivePoint<T> u_k;
};

/// Camera pair and deleted row (all 0-based) that produced a world point.
struct TriangulationWitness {
  int j = 0;
  int k = 1;
  int row = 0;
};

template <typename T>
struct TriangulationSolution {
  ProjectivePoint<T> world;
  /// (lambda_j, lambda_k) for the witness pair: A_j X = lambda_j u_j.
  std::array<T, 2> lambdas;
  /// lambda_m for every camera (zero when A_m X = 0).
  Vec<T> all_lambdas;
  TriangulationWitness witness;
  int rank_of_b = 0;
};

template <typename T>
BMatrix<T> AssembleB(const CameraRig<T>& rig, int j, int k,
                     const ProjectivePoint<T>& u_j,
                     const ProjectivePoint<T>& u_k);

/// Signed maximal minors of B with row `row` deleted (0-based); the
/// kernel direction (X, -lambda_j, -lambda_k) of that 5x6 matrix.
template <typename T>
Vec<T> Wedge5(const BMatrix<T>& b, int row);

/// First four coordinates of Wedge5, possibly all zero.
template <typename T>
std::array<T, 4> Wedge5TildeRaw(const BMatrix<T>& b, int row);

/// First four coordinates of Wedge5 as a world point, or nullopt when they
/// all vanish (float: relative to the full wedge norm).
template <typename T>
std::optional<ProjectivePoint<T>> Wedge5Tilde(const BMatrix<T>& b, int row,
                                              const Tolerances& tol = {});

struct TriangulabilityResult {
  bool triangulable = false;
  std::optional<TriangulationWitness> witness;
};

/// Throws kNotInVariety when the tuple fails MultiviewMembership. Scans
/// pairs (j, k) lexicographically and rows 0..5, returning the first pair of
/// rank 5 with a nonzero wedge.
template <typename T>
TriangulabilityResult IsTriangulable(const CameraRig<T>& rig,
                                     const ImageTuple<T>& tuple);

/// Throws kNotInVariety, kNotTriangulable, or (float) kAmbiguousFloat when
/// candidate world points from different witnesses disagree.
template <typename T>
TriangulationSolution<T> Triangulate(const CameraRig<T>& rig,
                                     const ImageTuple<T>& tuple);

/// Image pair (u_j, u_k) on which B^{jk} drops to rank <= 4, obtained by
/// solving the left-kernel conditions of [A_j; A_k]. `unique` is false when
/// that locus is not a single point.
template <typename T>
struct RankDeficiencyLocus {
  bool unique = false;
  std::optional<ProjectivePoint<T>> u_j;
  std::optional<ProjectivePoint<T>> u_k;
};

template <typename T>
RankDeficiencyLocus<T> ComputeRankDeficiencyLocus(const CameraRig<T>& rig,
                                                  int j, int k);

}  // namespace rigidmv
