#include "rigidmv/projective.hpp"

#include <algorithm>
#include <cmath>

namespace rigidmv {

template <typename T>
bool IsZeroVector(std::span<const T> v, double zero_tol) {
  return std::all_of(v.begin(), v.end(), [&](const T& x) {
    return ScalarTraits<T>::IsZero(x, zero_tol);
  });
}

template <typename T>
ProjectivePoint<T>::ProjectivePoint(Vec<T> coords, double zero_tol)
    : coords_(std::move(coords)) {
  if (IsZeroVector<T>(coords_, zero_tol)) {
    throw Error(ErrorCode::kZeroPoint, "projective point with all coordinates zero");
  }
}

template <>
ProjectivePoint<Rational> ProjectivePoint<Rational>::Normalized() const {
  auto it = std::find_if(coords_.begin(), coords_.end(),
                         [](const Rational& x) { return sgn(x) != 0; });
  const Rational s = *it;
  Vec<Rational> out(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) out[i] = coords_[i] / s;
  return ProjectivePoint<Rational>(std::move(out));
}

template <>
ProjectivePoint<double> ProjectivePoint<double>::Normalized() const {
  const double n = Norm2(coords_);
  std::size_t big = 0;
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (std::abs(coords_[i]) > std::abs(coords_[big])) big = i;
  const double s = coords_[big] < 0 ? -n : n;
  Vec<double> out(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) out[i] = coords_[i] / s;
  return ProjectivePoint<double>(std::move(out));
}

template <>
bool Proportional(std::span<const Rational> a, std::span<const Rational> b,
                  const Tolerances&) {
  if (a.size() != b.size()) return false;
  if (IsZeroVector(a) || IsZeroVector(b)) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

template <>
bool Proportional(std::span<const double> a, std::span<const double> b,
                  const Tolerances& tol) {
  if (a.size() != b.size()) return false;
  const double na = Norm2(a), nb = Norm2(b);
  if (na == 0.0 || nb == 0.0) return false;
  double plus = 0, minus = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i] / na, y = b[i] / nb;
    plus += (x - y) * (x - y);
    minus += (x + y) * (x + y);
  }
  return std::sqrt(std::min(plus, minus)) <= tol.angle;
}

template <typename T>
bool ProjectivelyEqual(const ProjectivePoint<T>& a, const ProjectivePoint<T>& b,
                       const Tolerances& tol) {
  return Proportional<T>(a.coords(), b.coords(), tol);
}

template class ProjectivePoint<Rational>;
template class ProjectivePoint<double>;
template bool IsZeroVector(std::span<const Rational>, double);
template bool IsZeroVector(std::span<const double>, double);
template bool ProjectivelyEqual(const ProjectivePoint<Rational>&,
                                const ProjectivePoint<Rational>&,
                                const Tolerances&);
template bool ProjectivelyEqual(const ProjectivePoint<double>&,
                                const ProjectivePoint<double>&,
                                const Tolerances&);

}  // namespace rigidmv
