#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rigidmv/linalg.hpp"
#include "rigidmv/projective.hpp"

namespace rigidmv {

/// A rank-3 3x4 projection matrix with its focal point (kernel).
template <typename T>
class Camera {
 public:
  /// Throws kRankDeficientCamera unless the matrix is 3x4 of rank 3.
  explicit Camera(Mat<T> matrix, const Tolerances& tol = {});

  const Mat<T>& matrix() const { return matrix_; }
  const ProjectivePoint<T>& focal_point() const { return focal_point_; }

 private:
  Mat<T> matrix_;
  ProjectivePoint<T> focal_point_;
};

/// One failed focal-point condition. Camera indices are 0-based.
struct PositionViolation {
  enum class Kind { kDuplicateFocalPoints, kCollinearTriple, kCoplanarQuadruple };
  Kind kind;
  std::vector<int> cameras;

  std::string Describe() const;
};

/// Focal points distinct, no three collinear, no four coplanar. Triples are
/// only reported when their pairs are distinct, quadruples only when their
/// triples are not collinear, so each violation is reported once at its
/// lowest level.
struct GeneralPositionRecord {
  std::vector<PositionViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Ordered list of n >= 2 cameras with eagerly computed epipoles and
/// fundamental matrices. Immutable after construction. Degenerate focal
/// configurations are accepted and recorded in general_position().
template <typename T>
class CameraRig {
 public:
  explicit CameraRig(const std::vector<Mat<T>>& matrices,
                     const Tolerances& tol = {});

  int size() const { return static_cast<int>(cameras_.size()); }
  const Camera<T>& camera(int i) const;
  const std::vector<Camera<T>>& cameras() const { return cameras_; }
  std::vector<Mat<T>> matrices() const;

  /// e_{k<-j} = A_k f_j: the image of focal point j in camera k (j != k).
  /// Throws kZeroPoint when f_j coincides with f_k.
  ProjectivePoint<T> Epipole(int k, int j) const;

  /// F with u_j^T F u_k = det B^{jk}(u_j, u_k). F^{kj} = (F^{jk})^T.
  const Mat<T>& Fundamental(int j, int k) const;

  const GeneralPositionRecord& general_position() const { return position_; }
  const Tolerances& tolerances() const { return tol_; }

 private:
  void CheckIndex(int i) const;
  std::size_t PairSlot(int j, int k) const;

  std::vector<Camera<T>> cameras_;
  std::vector<Vec<T>> epipoles_;  // n*n, slot k*n + j
  std::vector<Mat<T>> fundamentals_;  // per unordered pair j < k
  std::vector<Mat<T>> fundamentals_t_;
  GeneralPositionRecord position_;
  Tolerances tol_;
};

/// Element of SE(3): [R t; 0 1] with R^T R = I and det R = 1.
template <typename T>
class RigidMotion {
 public:
  /// Throws kNotRigidMotion when the block structure or orthogonality fails.
  explicit RigidMotion(Mat<T> matrix, const Tolerances& tol = {});
  static RigidMotion FromRotationTranslation(const Mat<T>& rotation,
                                             const Vec<T>& translation,
                                             const Tolerances& tol = {});
  /// Rational rotation from a nonzero quaternion (a, b, c, d).
  static RigidMotion FromQuaternion(const Vec<T>& q, const Vec<T>& translation);

  const Mat<T>& matrix() const { return matrix_; }

 private:
  Mat<T> matrix_;
};

/// The 6x6 matrix [A_j u_j 0; A_k 0 u_k].
template <typename T>
Mat<T> PairMatrix(const Mat<T>& a_j, const Mat<T>& a_k, std::span<const T> u_j,
                  std::span<const T> u_k);

/// A X; throws kUndefinedProjection when X is the focal point.
template <typename T>
ProjectivePoint<T> Project(const Camera<T>& camera, const ProjectivePoint<T>& x,
                           const Tolerances& tol = {});

template <typename T>
ImageTuple<T> ForwardMap(const CameraRig<T>& rig, const ProjectivePoint<T>& x);

template <typename T>
Mat<T> FundamentalMatrix(const CameraRig<T>& rig, int j, int k);

template <typename T>
struct MembershipResult {
  bool member = false;
  int rank = 0;
  /// World part of a kernel vector when member.
  std::optional<ProjectivePoint<T>> world;
  /// Cameras whose scale factor in that kernel vector is zero.
  std::vector<bool> zero_lambda;
  /// False when the kernel has dimension > 1 (preimage not unique).
  bool unique = false;
};

/// Rank test on the stacked 3n x (4+n) matrix with block rows
/// [A_j | 0 .. u_j .. 0]: member iff rank <= n + 3.
template <typename T>
MembershipResult<T> MultiviewMembership(const CameraRig<T>& rig,
                                        const ImageTuple<T>& tuple);

/// (A_1 N, ..., A_n N). Throws kSingularTransform for singular N.
template <typename T>
CameraRig<T> ApplyRightAction(const CameraRig<T>& rig, const Mat<T>& n);
template <typename T>
CameraRig<T> ApplyRightAction(const CameraRig<T>& rig,
                              const RigidMotion<T>& motion);

/// (M_1 A_1, ..., M_n A_n).
template <typename T>
CameraRig<T> ApplyLeftAction(const CameraRig<T>& rig,
                             const std::vector<Mat<T>>& ms);

/// Applies M_i to the i-th image point.
template <typename T>
ImageTuple<T> TransformTuple(const ImageTuple<T>& tuple,
                             const std::vector<Mat<T>>& ms);

}  // namespace rigidmv
