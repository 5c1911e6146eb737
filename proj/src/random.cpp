#include "rigidmv/random.hpp"

#include <cmath>

namespace rigidmv {

std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t SubSeed(std::uint64_t seed, std::uint64_t index) {
  return Mix64(Mix64(seed) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

long Rng::UniformInt(long lo, long hi) {
  if (hi < lo) throw Error(ErrorCode::kInvalidArgument, "empty integer range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<long>(Next());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = Next();
  } while (x >= limit);
  return lo + static_cast<long>(x % span);
}

double Rng::Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

double Rng::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1;
  do {
    u1 = Uniform();
  } while (u1 <= 0.0);
  const double u2 = Uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2 * M_PI * u2);
  has_spare_ = true;
  return r * std::cos(2 * M_PI * u2);
}

Rational Rng::SmallRational(int bound) {
  Rational q(UniformInt(-bound, bound), UniformInt(1, bound));
  q.canonicalize();
  return q;
}

Mat<Rational> RandomCameraMatrix(Rng& rng, int height, bool signed_entries) {
  if (height < 2) throw Error(ErrorCode::kInvalidArgument, "height must be at least 2");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Mat<Rational> m(3, 4);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 4; ++c)
        m(r, c) = signed_entries ? rng.UniformInt(-height, height) : rng.UniformInt(0, height - 1);
    if (Rank(m).rank == 3) return m;
  }
  throw Error(ErrorCode::kExhausted, "no rank-3 camera after 1000 draws");
}

Camera<Rational> RandomCamera(std::uint64_t seed, int height, bool signed_entries) {
  Rng rng(seed);
  return Camera<Rational>(RandomCameraMatrix(rng, height, signed_entries));
}

CameraRig<Rational> RandomRig(std::uint64_t seed, int n, int height, bool signed_entries) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "a rig needs n >= 2");
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Mat<Rational>> ms;
    for (int i = 0; i < n; ++i) ms.push_back(RandomCameraMatrix(rng, height, signed_entries));
    CameraRig<Rational> rig(ms);
    if (rig.general_position().ok()) return rig;
  }
  throw Error(ErrorCode::kExhausted, "no rig in general position after 1000 draws");
}

Vec<Rational> StereographicDirection(const Rational& p, const Rational& q) {
  const Rational s = p * p + q * q;
  const Rational den = s + 1;
  return {Rational(2 * p / den), Rational(2 * q / den), Rational((s - 1) / den)};
}

ProjectivePoint<Rational> RandomAffinePoint(Rng& rng, int bound) {
  return ProjectivePoint<Rational>(
      {rng.SmallRational(bound), rng.SmallRational(bound), rng.SmallRational(bound), Rational(1)});
}

WorldPair SampleUnitPair(Rng& rng, int bound) {
  const auto x = RandomAffinePoint(rng, bound);
  const Vec<Rational> d = StereographicDirection(rng.SmallRational(bound), rng.SmallRational(bound));
  return {x, ProjectivePoint<Rational>(
                 {Rational(x[0] + d[0]), Rational(x[1] + d[1]), Rational(x[2] + d[2]), Rational(1)})};
}

WorldPair SampleGenericPair(Rng& rng, int bound) {
  const auto x = RandomAffinePoint(rng, bound);
  while (true) {
    const Vec<Rational> d{rng.SmallRational(bound), rng.SmallRational(bound),
                          rng.SmallRational(bound)};
    const Rational len2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    if (len2 == 1 || len2 == 0) continue;
    return {x, ProjectivePoint<Rational>({Rational(x[0] + d[0]), Rational(x[1] + d[1]),
                                          Rational(x[2] + d[2]), Rational(1)})};
  }
}

RigidMotion<Rational> RandomRigidMotion(Rng& rng, int bound) {
  Vec<Rational> q(4);
  do {
    for (auto& c : q) c = rng.UniformInt(-bound, bound);
  } while (q[0] == 0 && q[1] == 0 && q[2] == 0 && q[3] == 0);
  return RigidMotion<Rational>::FromQuaternion(
      q, {rng.SmallRational(10), rng.SmallRational(10), rng.SmallRational(10)});
}

ImageTuple<Rational> IntegerTuple(const ImageTuple<Rational>& tuple) {
  ImageTuple<Rational> out;
  out.reserve(tuple.size());
  for (const auto& p : tuple) out.emplace_back(ClearDenominators(p.coords()));
  return out;
}

bool ExactImages(const CameraRig<Rational>& rig, const ProjectivePoint<Rational>& x,
                 ImageTuple<Rational>* out) {
  try {
    *out = IntegerTuple(ForwardMap(rig, x));
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kUndefinedProjection) return false;
    throw;
  }
}

ImageTuple<double> AddNoise(const ImageTuple<double>& tuple, double sigma, Rng& rng) {
  ImageTuple<double> out;
  for (const auto& p : tuple) {
    if (p[2] == 0) throw Error(ErrorCode::kInvalidArgument, "noise needs finite image points");
    const double x = p[0] / p[2] + sigma * rng.Normal();
    const double y = p[1] / p[2] + sigma * rng.Normal();
    out.emplace_back(Vec<double>{x, y, 1.0});
  }
  return out;
}

ImageTuple<double> ToDouble(const ImageTuple<Rational>& tuple) {
  ImageTuple<double> out;
  for (const auto& p : tuple) {
    Vec<double> v;
    for (const auto& c : p.coords()) v.push_back(c.get_d());
    out.emplace_back(std::move(v));
  }
  return out;
}

CameraRig<double> ToDouble(const CameraRig<Rational>& rig) {
  std::vector<Mat<double>> ms;
  for (const auto& m : rig.matrices()) ms.push_back(m.Cast<double>());
  return CameraRig<double>(ms);
}

}  // namespace rigidmv
