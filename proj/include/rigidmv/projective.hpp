#pragma once

#include <vector>

#include "rigidmv/matrix.hpp"

namespace rigidmv {

/// Homogeneous coordinates of a point in P^2 (length 3) or P^3 (length 4).
/// Two points are equal when their coordinate vectors are proportional.
template <typename T>
class ProjectivePoint {
 public:
  ProjectivePoint() = default;
  /// Throws kZeroPoint when every coordinate is zero (float: |x| <= zero_tol
  /// for all coordinates).
  explicit ProjectivePoint(Vec<T> coords, double zero_tol = 0.0);

  std::size_t size() const { return coords_.size(); }
  const T& operator[](std::size_t i) const { return coords_[i]; }
  const Vec<T>& coords() const { return coords_; }

  /// Exact: first nonzero coordinate scaled to 1. Float: unit Euclidean norm
  /// with the largest-magnitude coordinate positive.
  ProjectivePoint Normalized() const;

 private:
  Vec<T> coords_;
};

template <typename T>
using ImageTuple = std::vector<ProjectivePoint<T>>;

/// Equality up to nonzero scale. Exact: all 2x2 minors of [a b] vanish.
/// Float: unit representatives agree up to sign within tol.angle.
template <typename T>
bool ProjectivelyEqual(const ProjectivePoint<T>& a, const ProjectivePoint<T>& b,
                       const Tolerances& tol = {});

/// Raw-vector variant used when either side may be the zero vector; a zero
/// vector is never equal to anything.
template <typename T>
bool Proportional(std::span<const T> a, std::span<const T> b,
                  const Tolerances& tol = {});

template <typename T>
bool IsZeroVector(std::span<const T> v, double zero_tol = 0.0);

}  // namespace rigidmv
