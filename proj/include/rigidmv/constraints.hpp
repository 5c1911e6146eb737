#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rigidmv/bihom.hpp"
#include "rigidmv/triangulate.hpp"

namespace rigidmv {

enum class Family {
  kMultiviewBilinear,
  kMultiviewTrilinear,
  kOcticFull,
  kOcticNine,
  kOcticSixteen,
  kCoplanar,
  kPairwiseDistance,
  kGeneralDE,
};

const char* FamilyName(Family family);
/// Accepts the canonical names ("OCTIC_FULL") and the CLI short forms
/// ("full", "nine", "sixteen").
Family ParseFamily(const std::string& name);

/// Camera pair (j < k) and two deleted rows, all 0-based, for one side of
/// an octic T(w_{i1}, w_{i2}, c_{i3}, c_{i4}).
struct WedgeChoice {
  int j = 0;
  int k = 1;
  int row_a = 0;
  int row_b = 0;
};

/// T(Wedge5Tilde(B^{j1k1}_{i1}), Wedge5Tilde(B^{j1k1}_{i2}),
///   Wedge5Tilde(C^{j2k2}_{i3}), Wedge5Tilde(C^{j2k2}_{i4})).
template <typename T>
T OcticEval(const CameraRig<T>& rig, const QuadTensor<T>& tensor,
            const WedgeChoice& u_side, const WedgeChoice& v_side,
            const ImageTuple<T>& u, const ImageTuple<T>& v);

/// Extra inputs for families that need them.
template <typename T>
struct ConstraintParams {
  /// Constraint form for the octic and GENERAL_DE families; unit distance
  /// when empty.
  std::optional<BihomForm<T>> form;
  /// d12, d13, d23 for PAIRWISE_DISTANCE.
  std::array<T, 3> distances{T(1), T(1), T(1)};
};

/// Values of a family at one input, with the float scale used to decide
/// vanishing (value / scale compared against tol.residual).
template <typename T>
struct Evaluation {
  std::vector<T> values;
  std::vector<double> scales;

  bool Vanishes(std::size_t i, const Tolerances& tol) const;
  bool AllVanish(const Tolerances& tol) const;
  std::size_t NonzeroCount(const Tolerances& tol) const;
};

/// An enumerable family of polynomial evaluators over image tuples.
///
/// Index layouts (all 0-based):
///   bilinear:   {side, j, k}                      side 0 = u, 1 = v
///   trilinear:  {side, j, k, l, minor}            minor in 0..35
///   octic_*:    {j1, k1, i1, i2, j2, k2, i3, i4}
///   coplanar:   {j_p, k_p, row_p} for p = 0..3    (12 entries)
///   pairwise:   {a, b, j1, k1, i, j2, k2, k}      points a < b
///   general_de: {j1, k1, i, j2, k2, k}
template <typename T>
class ConstraintSystem {
 public:
  ConstraintSystem(const CameraRig<T>& rig, Family family,
                   ConstraintParams<T> params = {});

  Family family() const { return family_; }
  /// Number of image tuples one evaluation consumes.
  int arity() const;
  std::size_t size() const { return indices_.size(); }
  const std::vector<std::vector<int>>& indices() const { return indices_; }
  const CameraRig<T>& rig() const { return rig_; }
  const BihomForm<T>& form() const { return form_; }

  Evaluation<T> Evaluate(const std::vector<ImageTuple<T>>& tuples) const;

 private:
  void Enumerate();

  CameraRig<T> rig_;
  Family family_;
  ConstraintParams<T> params_;
  BihomForm<T> form_;
  std::optional<QuadTensor<T>> tensor_;
  std::vector<std::vector<int>> indices_;
};

/// All 7x7 minors of [A_j u_j 0 0; A_k 0 u_k 0; A_l 0 0 u_l] (36 values).
template <typename T>
Vec<T> TrilinearResiduals(const CameraRig<T>& rig, int j, int k, int l,
                          const ProjectivePoint<T>& u_j,
                          const ProjectivePoint<T>& u_k,
                          const ProjectivePoint<T>& u_l);

/// Closure-of-image membership decided by triangulation: both tuples in
/// V_A; an n=2 side equal to the epipole pair is accepted outright;
/// otherwise q(X_u, X_v) must vanish.
template <typename T>
bool RigidMembershipOracle(const CameraRig<T>& rig, const ImageTuple<T>& u,
                           const ImageTuple<T>& v,
                           const std::optional<BihomForm<T>>& form = {});

/// Both tuples in V_A and every evaluator of an octic family vanishes.
template <typename T>
bool RigidMembershipByEquations(const CameraRig<T>& rig, const ImageTuple<T>& u,
                                const ImageTuple<T>& v, Family family);

/// det(w_0, w_1, w_2, w_3) for the four wedge choices (pair j,k and row)
/// applied to four image tuples.
template <typename T>
Vec<T> CoplanarResiduals(
    const CameraRig<T>& rig, const std::array<ImageTuple<T>, 4>& tuples,
    const std::vector<std::array<TriangulationWitness, 4>>& choices);

/// q evaluated at the two wedge vectors: q(Wedge5Tilde(B_i), Wedge5Tilde(C_k)).
template <typename T>
T GeneralConstraintEval(const CameraRig<T>& rig, const BihomForm<T>& q,
                        const TriangulationWitness& u_choice,
                        const TriangulationWitness& v_choice,
                        const ImageTuple<T>& u, const ImageTuple<T>& v);

/// (d12+d13+d23)(d12+d13-d23)(d12-d13+d23)(-d12+d13+d23); zero exactly for
/// collinear triples. Throws kNonPositiveDistance.
template <typename T>
T CollinearityDiscriminant(const T& d12, const T& d13, const T& d23);

/// Strict triangle inequality. Throws kNonPositiveDistance.
template <typename T>
bool TriangleInequalityOk(const T& d12, const T& d13, const T& d23);

}  // namespace rigidmv
