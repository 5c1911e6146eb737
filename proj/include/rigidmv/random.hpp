#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "rigidmv/camera.hpp"

namespace rigidmv {

/// splitmix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);
/// Independent seed for stream `index` of a parent seed.
std::uint64_t SubSeed(std::uint64_t seed, std::uint64_t index);

/// Seeded generator with platform-independent integer and normal draws
/// (the standard distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  /// Uniform on [lo, hi] by rejection.
  long UniformInt(long lo, long hi);
  /// Uniform on [0, 1).
  double Uniform();
  /// Standard normal (Box-Muller).
  double Normal();
  /// p/q with |p| <= bound, 1 <= q <= bound.
  Rational SmallRational(int bound);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// 3x4 integer matrix with entries in [0, height-1] (or [-height, height]
/// when signed_entries), redrawn until rank 3.
Mat<Rational> RandomCameraMatrix(Rng& rng, int height = 20, bool signed_entries = false);
Camera<Rational> RandomCamera(std::uint64_t seed, int height = 20, bool signed_entries = false);

/// Rig whose focal points are in general position. Throws kExhausted after
/// 1000 redraws.
CameraRig<Rational> RandomRig(std::uint64_t seed, int n, int height = 20,
                              bool signed_entries = false);

/// (2p, 2q, p^2+q^2-1) / (p^2+q^2+1): a rational point of the unit sphere.
Vec<Rational> StereographicDirection(const Rational& p, const Rational& q);

/// Affine point (x, y, z, 1) with SmallRational coordinates.
ProjectivePoint<Rational> RandomAffinePoint(Rng& rng, int bound = 100);

struct WorldPair {
  ProjectivePoint<Rational> x;
  ProjectivePoint<Rational> y;
};

/// Y = X + a rational unit vector, so the unit-distance form vanishes.
WorldPair SampleUnitPair(Rng& rng, int bound = 100);
/// Y = X + a random rational offset whose squared length is not 1.
WorldPair SampleGenericPair(Rng& rng, int bound = 100);

/// Rational rotation from a random integer quaternion with entries in
/// [-bound, bound], plus a SmallRational translation.
RigidMotion<Rational> RandomRigidMotion(Rng& rng, int bound = 5);

/// Scales every point to a primitive integer representative.
ImageTuple<Rational> IntegerTuple(const ImageTuple<Rational>& tuple);

/// Forward map of X on the exact backend, with integer image coordinates.
/// Returns false when X projects to a focal point of some camera.
bool ExactImages(const CameraRig<Rational>& rig, const ProjectivePoint<Rational>& x,
                 ImageTuple<Rational>* out);

/// Additive Gaussian noise on the affine image coordinates (u0/u2, u1/u2).
ImageTuple<double> AddNoise(const ImageTuple<double>& tuple, double sigma, Rng& rng);

ImageTuple<double> ToDouble(const ImageTuple<Rational>& tuple);
CameraRig<double> ToDouble(const CameraRig<Rational>& rig);

}  // namespace rigidmv
