#include "rigidmv/camera.hpp"

#include <cmath>

namespace rigidmv {
namespace {

template <typename T>
Vec<T> Basis3(int a) {
  Vec<T> e(3, T(0));
  e[a] = T(1);
  return e;
}

template <typename T>
bool ScalarIsZero(const T& x, const Tolerances& tol) {
  return ScalarTraits<T>::IsZero(x, tol.zero);
}

double FrobeniusNorm(const Mat<double>& m) { return Norm2(m.data()); }

// Rows for the membership matrix. The float path rescales each camera and
// image point to unit norm, which leaves the rank unchanged.
template <typename T>
Mat<T> MembershipMatrix(const CameraRig<T>& rig, const ImageTuple<T>& tuple) {
  const int n = rig.size();
  Mat<T> m(3 * n, 4 + n);
  for (int j = 0; j < n; ++j) {
    const Mat<T>& a = rig.camera(j).matrix();
    T a_scale(1), u_scale(1);
    if constexpr (!ScalarTraits<T>::kExact) {
      a_scale = 1.0 / FrobeniusNorm(a);
      u_scale = 1.0 / Norm2(tuple[j].coords());
    }
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 4; ++c) m(3 * j + r, c) = a(r, c) * a_scale;
      m(3 * j + r, 4 + j) = tuple[j][r] * u_scale;
    }
  }
  return m;
}

}  // namespace

std::string PositionViolation::Describe() const {
  std::string s;
  switch (kind) {
    case Kind::kDuplicateFocalPoints: s = "duplicate focal points"; break;
    case Kind::kCollinearTriple: s = "three collinear focal points"; break;
    case Kind::kCoplanarQuadruple: s = "four coplanar focal points"; break;
  }
  s += " (cameras";
  for (int c : cameras) s += " " + std::to_string(c);
  return s + ")";
}

template <typename T>
Camera<T>::Camera(Mat<T> matrix, const Tolerances& tol)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() != 3 || matrix_.cols() != 4) {
    throw Error(ErrorCode::kShapeMismatch, "camera must be 3x4");
  }
  if (Rank(matrix_, tol).rank != 3) {
    throw Error(ErrorCode::kRankDeficientCamera, "camera matrix rank < 3");
  }
  focal_point_ = ProjectivePoint<T>(KernelVector(matrix_, tol));
}

template <typename T>
Mat<T> PairMatrix(const Mat<T>& a_j, const Mat<T>& a_k, std::span<const T> u_j,
                  std::span<const T> u_k) {
  Mat<T> b(6, 6);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 4; ++c) {
      b(r, c) = a_j(r, c);
      b(3 + r, c) = a_k(r, c);
    }
    b(r, 4) = u_j[r];
    b(3 + r, 5) = u_k[r];
  }
  return b;
}

template <typename T>
CameraRig<T>::CameraRig(const std::vector<Mat<T>>& matrices,
                        const Tolerances& tol)
    : tol_(tol) {
  if (matrices.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a rig needs at least two cameras");
  }
  cameras_.reserve(matrices.size());
  for (const auto& m : matrices) cameras_.emplace_back(m, tol);
  const int n = size();

  epipoles_.resize(n * n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      if (j != k)
        epipoles_[k * n + j] =
            cameras_[k].matrix() * std::span<const T>(cameras_[j].focal_point().coords());

  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Mat<T> f(3, 3);
      for (int a = 0; a < 3; ++a) {
        const auto ea = Basis3<T>(a);
        for (int b = 0; b < 3; ++b) {
          const auto eb = Basis3<T>(b);
          f(a, b) = Det(PairMatrix<T>(cameras_[j].matrix(), cameras_[k].matrix(),
                                      ea, eb));
        }
      }
      fundamentals_t_.push_back(f.Transpose());
      fundamentals_.push_back(std::move(f));
    }
  }

  // Focal-point general position.
  auto focal = [&](std::initializer_list<int> ids) {
    Mat<T> m(ids.size(), 4);
    std::size_t r = 0;
    for (int id : ids) {
      auto f = cameras_[id].focal_point().coords();
      if constexpr (!ScalarTraits<T>::kExact) {
        const double s = Norm2(f);
        for (auto& x : f) x /= s;
      }
      for (int c = 0; c < 4; ++c) m(r, c) = f[c];
      ++r;
    }
    return m;
  };
  using Kind = PositionViolation::Kind;
  std::vector<std::vector<bool>> dup(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (Rank(focal({a, b}), tol).rank < 2) {
        dup[a][b] = true;
        position_.violations.push_back({Kind::kDuplicateFocalPoints, {a, b}});
      }
  std::vector<std::vector<int>> collinear;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        if (dup[a][b] || dup[a][c] || dup[b][c]) continue;
        if (Rank(focal({a, b, c}), tol).rank < 3) {
          collinear.push_back({a, b, c});
          position_.violations.push_back({Kind::kCollinearTriple, {a, b, c}});
        }
      }
  auto has_bad_triple = [&](int a, int b, int c, int d) {
    const int ids[4] = {a, b, c, d};
    for (int x = 0; x < 4; ++x)
      for (int y = x + 1; y < 4; ++y)
        if (dup[ids[x]][ids[y]]) return true;
    for (const auto& t : collinear) {
      int hits = 0;
      for (int id : ids) hits += (id == t[0] || id == t[1] || id == t[2]);
      if (hits == 3) return true;
    }
    return false;
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          if (has_bad_triple(a, b, c, d)) continue;
          if (Rank(focal({a, b, c, d}), tol).rank < 4) {
            position_.violations.push_back(
                {Kind::kCoplanarQuadruple, {a, b, c, d}});
          }
        }
}

template <typename T>
void CameraRig<T>::CheckIndex(int i) const {
  if (i < 0 || i >= size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "camera index " + std::to_string(i) + " out of range");
  }
}

template <typename T>
const Camera<T>& CameraRig<T>::camera(int i) const {
  CheckIndex(i);
  return cameras_[i];
}

template <typename T>
std::vector<Mat<T>> CameraRig<T>::matrices() const {
  std::vector<Mat<T>> out;
  for (const auto& c : cameras_) out.push_back(c.matrix());
  return out;
}

template <typename T>
ProjectivePoint<T> CameraRig<T>::Epipole(int k, int j) const {
  CheckIndex(k);
  CheckIndex(j);
  if (j == k) throw Error(ErrorCode::kInvalidArgument, "epipole needs j != k");
  return ProjectivePoint<T>(epipoles_[k * size() + j], 0.0);
}

template <typename T>
std::size_t CameraRig<T>::PairSlot(int j, int k) const {
  // Lexicographic index of the unordered pair j < k.
  const int n = size();
  return static_cast<std::size_t>(j * n - j * (j + 1) / 2 + (k - j - 1));
}

template <typename T>
const Mat<T>& CameraRig<T>::Fundamental(int j, int k) const {
  CheckIndex(j);
  CheckIndex(k);
  if (j == k) throw Error(ErrorCode::kInvalidArgument, "fundamental needs j != k");
  if (j < k) return fundamentals_[PairSlot(j, k)];
  return fundamentals_t_[PairSlot(k, j)];
}

template <typename T>
RigidMotion<T>::RigidMotion(Mat<T> matrix, const Tolerances& tol)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() != 4 || matrix_.cols() != 4) {
    throw Error(ErrorCode::kNotRigidMotion, "rigid motion must be 4x4");
  }
  const double eps = ScalarTraits<T>::kExact ? 0.0 : tol.rank;
  auto near = [&](const T& x, const T& target) {
    return ScalarTraits<T>::IsZero(T(x - target), eps);
  };
  for (int c = 0; c < 3; ++c)
    if (!near(matrix_(3, c), T(0)))
      throw Error(ErrorCode::kNotRigidMotion, "bottom row must be (0,0,0,1)");
  if (!near(matrix_(3, 3), T(1)))
    throw Error(ErrorCode::kNotRigidMotion, "bottom row must be (0,0,0,1)");
  const Mat<T> r = matrix_.Block(0, 0, 3, 3);
  const Mat<T> rtr = r.Transpose() * r;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (!near(rtr(a, b), T(a == b ? 1 : 0)))
        throw Error(ErrorCode::kNotRigidMotion, "rotation block not orthogonal");
  if (!near(Det(r), T(1)))
    throw Error(ErrorCode::kNotRigidMotion, "rotation block has det != 1");
}

template <typename T>
RigidMotion<T> RigidMotion<T>::FromRotationTranslation(
    const Mat<T>& rotation, const Vec<T>& translation, const Tolerances& tol) {
  Mat<T> m = Mat<T>::Identity(4);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m(r, c) = rotation(r, c);
    m(r, 3) = translation[r];
  }
  return RigidMotion(std::move(m), tol);
}

template <typename T>
RigidMotion<T> RigidMotion<T>::FromQuaternion(const Vec<T>& q,
                                              const Vec<T>& translation) {
  const T& a = q[0];
  const T& b = q[1];
  const T& c = q[2];
  const T& d = q[3];
  const T s = a * a + b * b + c * c + d * d;
  if (ScalarTraits<T>::IsZero(s, 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "zero quaternion");
  }
  Mat<T> r{{a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)},
           {2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)},
           {2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d}};
  const T inv = T(1) / s;
  Tolerances tol;
  tol.rank = 1e-9;
  return FromRotationTranslation(r * inv, translation, tol);
}

template <typename T>
ProjectivePoint<T> Project(const Camera<T>& camera, const ProjectivePoint<T>& x,
                           const Tolerances& tol) {
  if (x.size() != 4) throw Error(ErrorCode::kShapeMismatch, "world point must have 4 coordinates");
  Vec<T> image = camera.matrix() * std::span<const T>(x.coords());
  double zero_tol = 0.0;
  if constexpr (!ScalarTraits<T>::kExact) {
    zero_tol = tol.zero * FrobeniusNorm(camera.matrix()) * Norm2(x.coords());
  }
  if (IsZeroVector<T>(image, zero_tol)) {
    throw Error(ErrorCode::kUndefinedProjection,
                "world point is the focal point of the camera");
  }
  return ProjectivePoint<T>(std::move(image));
}

template <typename T>
ImageTuple<T> ForwardMap(const CameraRig<T>& rig, const ProjectivePoint<T>& x) {
  ImageTuple<T> out;
  out.reserve(rig.size());
  for (const auto& cam : rig.cameras()) out.push_back(Project(cam, x, rig.tolerances()));
  return out;
}

template <typename T>
Mat<T> FundamentalMatrix(const CameraRig<T>& rig, int j, int k) {
  return rig.Fundamental(j, k);
}

template <typename T>
MembershipResult<T> MultiviewMembership(const CameraRig<T>& rig,
                                        const ImageTuple<T>& tuple) {
  const int n = rig.size();
  if (static_cast<int>(tuple.size()) != n) {
    throw Error(ErrorCode::kShapeMismatch, "tuple length differs from rig size");
  }
  for (const auto& u : tuple)
    if (u.size() != 3) throw Error(ErrorCode::kShapeMismatch, "image points need 3 coordinates");

  const Tolerances& tol = rig.tolerances();
  const Mat<T> m = MembershipMatrix(rig, tuple);
  MembershipResult<T> result;
  result.rank = Rank(m, tol).rank;
  result.member = result.rank <= n + 3;
  if (!result.member) return result;

  const auto kernel = KernelBasis(m, tol);
  result.unique = kernel.size() == 1;
  if (kernel.empty()) return result;  // float edge case: rank says member, SVD disagrees
  const auto& w = kernel.front();
  Vec<T> x(w.begin(), w.begin() + 4);
  double zero_tol = 0.0;
  if constexpr (!ScalarTraits<T>::kExact) zero_tol = tol.zero * Norm2(w);
  if (!IsZeroVector<T>(x, zero_tol)) result.world = ProjectivePoint<T>(std::move(x));
  result.zero_lambda.resize(n);
  for (int j = 0; j < n; ++j)
    result.zero_lambda[j] = ScalarTraits<T>::IsZero(w[4 + j], zero_tol);
  return result;
}

template <typename T>
CameraRig<T> ApplyRightAction(const CameraRig<T>& rig, const Mat<T>& n) {
  if (n.rows() != 4 || n.cols() != 4) {
    throw Error(ErrorCode::kShapeMismatch, "right action needs a 4x4 matrix");
  }
  if (Rank(n, rig.tolerances()).rank < 4) {
    throw Error(ErrorCode::kSingularTransform, "right action matrix is singular");
  }
  std::vector<Mat<T>> out;
  for (const auto& cam : rig.cameras()) out.push_back(cam.matrix() * n);
  return CameraRig<T>(out, rig.tolerances());
}

template <typename T>
CameraRig<T> ApplyRightAction(const CameraRig<T>& rig,
                              const RigidMotion<T>& motion) {
  return ApplyRightAction(rig, motion.matrix());
}

template <typename T>
CameraRig<T> ApplyLeftAction(const CameraRig<T>& rig,
                             const std::vector<Mat<T>>& ms) {
  if (static_cast<int>(ms.size()) != rig.size()) {
    throw Error(ErrorCode::kShapeMismatch, "need one 3x3 matrix per camera");
  }
  std::vector<Mat<T>> out;
  for (int i = 0; i < rig.size(); ++i) {
    if (ms[i].rows() != 3 || ms[i].cols() != 3) {
      throw Error(ErrorCode::kShapeMismatch, "left action needs 3x3 matrices");
    }
    if (Rank(ms[i], rig.tolerances()).rank < 3) {
      throw Error(ErrorCode::kSingularTransform, "left action matrix is singular");
    }
    out.push_back(ms[i] * rig.camera(i).matrix());
  }
  return CameraRig<T>(out, rig.tolerances());
}

template <typename T>
ImageTuple<T> TransformTuple(const ImageTuple<T>& tuple,
                             const std::vector<Mat<T>>& ms) {
  ImageTuple<T> out;
  for (std::size_t i = 0; i < tuple.size(); ++i)
    out.emplace_back(ms[i] * std::span<const T>(tuple[i].coords()));
  return out;
}

#define RIGIDMV_INSTANTIATE(T)                                                 \
  template class Camera<T>;                                                    \
  template class CameraRig<T>;                                                 \
  template class RigidMotion<T>;                                               \
  template Mat<T> PairMatrix(const Mat<T>&, const Mat<T>&, std::span<const T>, \
                             std::span<const T>);                              \
  template ProjectivePoint<T> Project(const Camera<T>&,                        \
                                      const ProjectivePoint<T>&,               \
                                      const Tolerances&);                      \
  template ImageTuple<T> ForwardMap(const CameraRig<T>&,                       \
                                    const ProjectivePoint<T>&);                \
  template Mat<T> FundamentalMatrix(const CameraRig<T>&, int, int);            \
  template MembershipResult<T> MultiviewMembership(const CameraRig<T>&,        \
                                                   const ImageTuple<T>&);      \
  template CameraRig<T> ApplyRightAction(const CameraRig<T>&, const Mat<T>&);  \
  template CameraRig<T> ApplyRightAction(const CameraRig<T>&,                  \
                                         const RigidMotion<T>&);               \
  template CameraRig<T> ApplyLeftAction(const CameraRig<T>&,                   \
                                        const std::vector<Mat<T>>&);           \
  template ImageTuple<T> TransformTuple(const ImageTuple<T>&,                  \
                                        const std::vector<Mat<T>>&);

RIGIDMV_INSTANTIATE(Rational)
RIGIDMV_INSTANTIATE(double)

}  // namespace rigidmv
