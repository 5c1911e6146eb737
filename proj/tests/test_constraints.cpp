#include <gtest/gtest.h>

#include "rigidmv/chow.hpp"
#include "rigidmv/constraints.hpp"
#include "test_support.hpp"

namespace rigidmv {
namespace {

using testing::CameraIe;
using testing::LeibnizDet;
using testing::ParallelExact;
using testing::Pt;
using testing::RandomIntMatrix;
using testing::RandomIntVector;
using testing::RandomNonzeroVector;
using testing::ThrowsCode;

CameraRig<Rational> IeRig() { return CameraRig<Rational>({CameraIe(0), CameraIe(1)}); }

Vec<Rational> Q4(long a, long b, long c, long d) { return {a, b, c, d}; }

// Direct evaluation of the unit-distance form from its affine meaning.
Rational QOracle(const Vec<Rational>& x, const Vec<Rational>& y, const Rational& d = 1) {
  Rational s = 0;
  for (int i = 0; i < 3; ++i) {
    const Rational t = x[i] * y[3] - y[i] * x[3];
    s += t * t;
  }
  return s - d * d * x[3] * x[3] * y[3] * y[3];
}

struct ImagePair {
  ImageTuple<Rational> u, v;
};

// Images of a world pair, or nullopt when a point hits a focal point.
std::optional<ImagePair> Images(const CameraRig<Rational>& rig, const WorldPair& w) {
  ImagePair out;
  if (!ExactImages(rig, w.x, &out.u) || !ExactImages(rig, w.y, &out.v)) return std::nullopt;
  return out;
}

TEST(Distance, UnitExamples) {
  const auto q = UnitDistanceQ<Rational>();
  EXPECT_EQ(q.Eval(Q4(0, 0, 0, 1), Q4(1, 0, 0, 1)), 0);
  EXPECT_EQ(q.Eval(Q4(0, 0, 0, 1), Q4(2, 0, 0, 1)), 3);
  EXPECT_EQ(q.Eval(Q4(0, 0, 0, 1), Q4(1, 0, 0, 0)), 1);
  EXPECT_EQ(q.d(), 2);
  EXPECT_EQ(q.e(), 2);
}

TEST(Distance, ScaledExamples) {
  const auto q2 = ScaledDistanceQ<Rational>(2);
  EXPECT_EQ(q2.Eval(Q4(0, 0, 0, 1), Q4(2, 0, 0, 1)), 0);
  EXPECT_EQ(q2.Eval(Q4(0, 0, 0, 1), Q4(1, 0, 0, 1)), -3);
  EXPECT_EQ(ScaledDistanceQ<Rational>(1).terms(), UnitDistanceQ<Rational>().terms());
  EXPECT_EQ(PairwiseQ<Rational>(0, 2, 3).terms(), ScaledDistanceQ<Rational>(3).terms());
  EXPECT_TRUE(ThrowsCode(ErrorCode::kZeroDistance, [] { ScaledDistanceQ<Rational>(0); }));
}

TEST(Distance, MatchesOracleOnRandomInputs) {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = RandomIntVector(rng, 4), y = RandomIntVector(rng, 4);
    const Rational d = rng.SmallRational(10);
    if (d == 0) continue;
    EXPECT_EQ(ScaledDistanceQ<Rational>(d).Eval(x, y), QOracle(x, y, d));
  }
}

TEST(Bihom, WrongDegreeTerms) {
  BihomForm<Rational> f(1, 1);
  EXPECT_TRUE(ThrowsCode(ErrorCode::kWrongBidegree, [&] { f.AddTerm({2, 0, 0, 0}, {1, 0, 0, 0}, 1); }));
  f.AddTerm({1, 0, 0, 0}, {0, 0, 0, 1}, 1);
  f.AddTerm({1, 0, 0, 0}, {0, 0, 0, 1}, -1);
  EXPECT_TRUE(f.terms().empty());
  EXPECT_TRUE(ThrowsCode(ErrorCode::kWrongBidegree, [&] { Polarize(f); }));
}

TEST(Polarize, IdentityAndSymmetry) {
  Rng rng(42);
  const auto q = UnitDistanceQ<Rational>();
  const auto t = Polarize(q);
  EXPECT_EQ(t.at(3, 3, 3, 3), -1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = RandomIntVector(rng, 4), x2 = RandomIntVector(rng, 4);
    const auto y = RandomIntVector(rng, 4), y2 = RandomIntVector(rng, 4);
    EXPECT_EQ(t.Eval(x, x, y, y), q.Eval(x, y));
    const Rational base = t.Eval(x, x2, y, y2);
    EXPECT_EQ(t.Eval(x2, x, y, y2), base);
    EXPECT_EQ(t.Eval(x, x2, y2, y), base);
    Vec<Rational> twice = x;
    for (auto& c : twice) c *= 2;
    EXPECT_EQ(t.Eval(twice, x2, y, y2), 2 * base);
    // Additivity in the first slot.
    Vec<Rational> sum(4);
    for (int i = 0; i < 4; ++i) sum[i] = x[i] + x2[i];
    EXPECT_EQ(t.Eval(sum, x2, y, y2), base + t.Eval(x2, x2, y, y2));
  }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          EXPECT_EQ(t.at(a, b, c, d), t.at(b, a, c, d));
          EXPECT_EQ(t.at(a, b, c, d), t.at(a, b, d, c));
        }
}

TEST(Polarize, GenericForm) {
  Rng rng(43);
  BihomForm<Rational> q(2, 2);
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = c; d < 4; ++d) {
          WorldExponent alpha{0, 0, 0, 0}, beta{0, 0, 0, 0};
          ++alpha[a], ++alpha[b], ++beta[c], ++beta[d];
          q.AddTerm(alpha, beta, rng.SmallRational(20));
        }
  const auto t = Polarize(q);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = RandomIntVector(rng, 4), y = RandomIntVector(rng, 4);
    EXPECT_EQ(t.Eval(x, x, y, y), q.Eval(x, y));
  }
}

TEST(Octic, IeExample) {
  const auto rig = IeRig();
  const ImageTuple<Rational> u{Pt({0, 0, 1}), Pt({1, 0, 1})};
  const ImageTuple<Rational> v{Pt({0, 2, 1}), Pt({1, 2, 1})};
  const auto b = AssembleB(rig, 0, 1, u[0], u[1]);
  const auto c = AssembleB(rig, 0, 1, v[0], v[1]);
  const auto t = Polarize(UnitDistanceQ<Rational>());
  int checked = 0;
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 6; ++k) {
      // Wedge scale factors from the permutation expansion: w = s * (0,0,1,1).
      const Mat<Rational> bi = b.matrix.WithoutRow(i), ck = c.matrix.WithoutRow(k);
      const Rational s = -LeibnizDet(bi.WithoutCol(3));
      const Rational r = -LeibnizDet(ck.WithoutCol(3));
      const Rational value = OcticEval(rig, t, {0, 1, i, i}, {0, 1, k, k}, u, v);
      EXPECT_EQ(value, s * s * r * r * 3);
      if (s != 0 && r != 0) {
        EXPECT_NE(value, 0);
        ++checked;
      }
    }
  EXPECT_GT(checked, 0);
}

TEST(Octic, EpipolePairGivesZero) {
  Rng rng(44);
  const auto t = Polarize(UnitDistanceQ<Rational>());
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto rig = RandomRig(seed, 2);
    const ImageTuple<Rational> v{rig.Epipole(0, 1), rig.Epipole(1, 0)};
    const auto u = ForwardMap(rig, ProjectivePoint<Rational>(RandomNonzeroVector(rng, 4)));
    const ConstraintSystem<Rational> sys(rig, Family::kOcticFull);
    EXPECT_TRUE(sys.Evaluate({u, v}).AllVanish({}));
    EXPECT_TRUE(RigidMembershipByEquations(rig, u, v, Family::kOcticNine));
    EXPECT_TRUE(RigidMembershipOracle(rig, u, v));
  }
}

TEST(Families, Sizes) {
  const auto rig2 = RandomRig(1, 2);
  const auto rig3 = RandomRig(2, 3);
  EXPECT_EQ(ConstraintSystem<Rational>(rig2, Family::kOcticNine).size(), 9u);
  EXPECT_EQ(ConstraintSystem<Rational>(rig2, Family::kOcticFull).size(), 441u);
  EXPECT_EQ(ConstraintSystem<Rational>(rig3, Family::kOcticFull).size(), 441u * 9);
  EXPECT_EQ(ConstraintSystem<Rational>(rig3, Family::kOcticNine).size(), 81u);
  EXPECT_EQ(ConstraintSystem<Rational>(rig3, Family::kOcticSixteen).size(), 16u);
  EXPECT_EQ(ConstraintSystem<Rational>(rig3, Family::kMultiviewBilinear).size(), 6u);
  EXPECT_EQ(ConstraintSystem<Rational>(rig3, Family::kMultiviewTrilinear).size(), 72u);
  EXPECT_EQ(ConstraintSystem<Rational>(rig2, Family::kCoplanar).size(), 16u);
  EXPECT_EQ(ConstraintSystem<Rational>(rig3, Family::kPairwiseDistance).size(), 243u);
  EXPECT_EQ(ConstraintSystem<Rational>(rig3, Family::kGeneralDE).size(), 81u);
  EXPECT_TRUE(ThrowsCode(ErrorCode::kFamilyMismatch,
                         [&] { ConstraintSystem<Rational>(rig2, Family::kOcticSixteen); }));
  EXPECT_TRUE(ThrowsCode(ErrorCode::kFamilyMismatch, [&] {
    ConstraintSystem<Rational>(rig2, Family::kOcticNine).Evaluate({ImageTuple<Rational>{}});
  }));
  EXPECT_EQ(ParseFamily("sixteen"), Family::kOcticSixteen);
  EXPECT_EQ(ParseFamily(FamilyName(Family::kCoplanar)), Family::kCoplanar);
}

TEST(Families, NineAndSixteenIndexChoices) {
  const auto rig3 = RandomRig(2, 3);
  const ConstraintSystem<Rational> sixteen(rig3, Family::kOcticSixteen);
  const ConstraintSystem<Rational> nine(rig3, Family::kOcticNine);
  for (const auto& idx : sixteen.indices()) {
    EXPECT_EQ(idx[0], 0);
    EXPECT_EQ(idx[2], idx[3]);
    EXPECT_LE(idx[2], 1);
    EXPECT_EQ(idx[6], idx[7]);
    EXPECT_LE(idx[6], 1);
  }
  for (const auto& idx : nine.indices()) {
    EXPECT_EQ(idx[2], idx[3]);
    EXPECT_LE(idx[2], 2);
  }
}

TEST(Families, AllVanishOnUnitPairs) {
  Rng rng(45);
  int tested = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 3;
    const auto rig = RandomRig(600 + trial, n);
    const auto img = Images(rig, SampleUnitPair(rng));
    if (!img) continue;
    ++tested;
    for (Family f : {Family::kMultiviewBilinear, Family::kOcticNine, Family::kGeneralDE}) {
      const ConstraintSystem<Rational> sys(rig, f);
      for (const auto& x : sys.Evaluate({img->u, img->v}).values) EXPECT_EQ(x, 0);
    }
    if (n >= 3) {
      const ConstraintSystem<Rational> sys(rig, Family::kOcticSixteen);
      for (const auto& x : sys.Evaluate({img->u, img->v}).values) EXPECT_EQ(x, 0);
      const ConstraintSystem<Rational> tri(rig, Family::kMultiviewTrilinear);
      for (const auto& x : tri.Evaluate({img->u, img->v}).values) EXPECT_EQ(x, 0);
    }
    if (n == 2) {
      const ConstraintSystem<Rational> full(rig, Family::kOcticFull);
      for (const auto& x : full.Evaluate({img->u, img->v}).values) EXPECT_EQ(x, 0);
    }
  }
  EXPECT_GE(tested, 25);
}

TEST(Families, FloatVanishingUsesScale) {
  Rng rng(46);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rig = RandomRig(700 + trial, 3);
    const auto unit = Images(rig, SampleUnitPair(rng));
    const auto generic = Images(rig, SampleGenericPair(rng));
    if (!unit || !generic) continue;
    const ConstraintSystem<double> sys(ToDouble(rig), Family::kOcticSixteen);
    EXPECT_TRUE(sys.Evaluate({ToDouble(unit->u), ToDouble(unit->v)}).AllVanish({}));
    EXPECT_FALSE(sys.Evaluate({ToDouble(generic->u), ToDouble(generic->v)}).AllVanish({}));
    ImageTuple<double> noise;
    for (int i = 0; i < 3; ++i) noise.emplace_back(Vec<double>{rng.Normal(), rng.Normal(), 1.0});
    for (Family f : {Family::kMultiviewBilinear, Family::kMultiviewTrilinear}) {
      const ConstraintSystem<double> mv(ToDouble(rig), f);
      EXPECT_TRUE(mv.Evaluate({ToDouble(unit->u), ToDouble(generic->v)}).AllVanish({}));
      EXPECT_FALSE(mv.Evaluate({noise, ToDouble(generic->v)}).AllVanish({}));
    }
  }
}

TEST(Trilinear, Residuals) {
  Rng rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rig = RandomRig(800 + trial, 3);
    const ProjectivePoint<Rational> x(RandomNonzeroVector(rng, 4));
    ImageTuple<Rational> t;
    if (!ExactImages(rig, x, &t)) continue;
    auto res = TrilinearResiduals(rig, 0, 1, 2, t[0], t[1], t[2]);
    ASSERT_EQ(res.size(), 36u);
    for (const auto& r : res) EXPECT_EQ(r, 0);

    // One image moved off the point: consistent pair plus a perturbed third.
    Vec<Rational> moved = t[2].coords();
    moved[0] += 1;
    res = TrilinearResiduals(rig, 0, 1, 2, t[0], t[1], ProjectivePoint<Rational>(moved));
    EXPECT_TRUE(std::any_of(res.begin(), res.end(), [](const Rational& r) { return r != 0; }));

    const ProjectivePoint<Rational> a(RandomNonzeroVector(rng, 3)), b(RandomNonzeroVector(rng, 3)),
        c(RandomNonzeroVector(rng, 3));
    res = TrilinearResiduals(rig, 0, 1, 2, a, b, c);
    EXPECT_TRUE(std::any_of(res.begin(), res.end(), [](const Rational& r) { return r != 0; }));
  }
}

TEST(Membership, OracleExamples) {
  Rng rng(48);
  const auto rig = IeRig();
  const ImageTuple<Rational> u{Pt({0, 0, 1}), Pt({1, 0, 1})};
  const ImageTuple<Rational> unit{Pt({0, 1, 1}), Pt({1, 1, 1})};
  const ImageTuple<Rational> two{Pt({0, 2, 1}), Pt({1, 2, 1})};
  EXPECT_TRUE(RigidMembershipOracle(rig, u, unit));
  EXPECT_FALSE(RigidMembershipOracle(rig, u, two));
  EXPECT_TRUE(RigidMembershipByEquations(rig, u, unit, Family::kOcticFull));
  EXPECT_FALSE(RigidMembershipByEquations(rig, u, two, Family::kOcticFull));
  const ImageTuple<Rational> epi{rig.Epipole(0, 1), rig.Epipole(1, 0)};
  EXPECT_TRUE(RigidMembershipOracle(rig, two, epi));
  EXPECT_TRUE(RigidMembershipOracle(rig, epi, two));
  const ImageTuple<Rational> off{Pt({0, 0, 1}), Pt({1, 1, 1})};
  EXPECT_FALSE(RigidMembershipOracle(rig, off, epi));
  EXPECT_FALSE(RigidMembershipByEquations(rig, off, epi, Family::kOcticFull));
}

TEST(Membership, EquationsAgreeWithOracle) {
  Rng rng(49);
  int members = 0, nonmembers = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 2;
    const auto rig = RandomRig(900 + trial, n);
    const auto img = Images(rig, trial % 2 ? SampleUnitPair(rng) : SampleGenericPair(rng));
    if (!img) continue;
    const bool oracle = RigidMembershipOracle(rig, img->u, img->v);
    (oracle ? members : nonmembers)++;
    EXPECT_EQ(RigidMembershipByEquations(rig, img->u, img->v, Family::kOcticFull), oracle);
    EXPECT_EQ(RigidMembershipByEquations(rig, img->u, img->v, Family::kOcticNine), oracle);
    if (n == 3) {
      EXPECT_EQ(RigidMembershipByEquations(rig, img->u, img->v, Family::kOcticSixteen), oracle);
    }
  }
  EXPECT_GT(members, 10);
  EXPECT_GT(nonmembers, 10);
}

TEST(Properties, ScaleInvariance) {
  Rng rng(50);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rig = RandomRig(1000 + trial, 3);
    const auto img = Images(rig, trial % 2 ? SampleUnitPair(rng) : SampleGenericPair(rng));
    if (!img) continue;
    const ConstraintSystem<Rational> sys(rig, Family::kOcticNine);
    const auto base = sys.Evaluate({img->u, img->v});
    // Rescale one image point on each side.
    const int m = trial % 3, p = (trial + 1) % 3;
    const Rational s = rng.UniformInt(2, 7), r = -rng.UniformInt(2, 7);
    ImageTuple<Rational> u = img->u, v = img->v;
    Vec<Rational> um = u[m].coords(), vp = v[p].coords();
    for (auto& c : um) c *= s;
    for (auto& c : vp) c *= r;
    u[m] = ProjectivePoint<Rational>(um);
    v[p] = ProjectivePoint<Rational>(vp);
    const auto scaled = sys.Evaluate({u, v});
    for (std::size_t i = 0; i < sys.size(); ++i) {
      const auto& idx = sys.indices()[i];
      Rational factor = 1;
      if (idx[0] == m || idx[1] == m) factor *= s * s;
      if (idx[4] == p || idx[5] == p) factor *= r * r;
      EXPECT_EQ(scaled.values[i], factor * base.values[i]);
    }
  }
}

TEST(Properties, RightActionByRigidMotion) {
  Rng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rig = RandomRig(1100 + trial, 3);
    const auto motion = RandomRigidMotion(rng);
    const auto moved = ApplyRightAction(rig, motion);
    const auto w = trial % 2 ? SampleUnitPair(rng) : SampleGenericPair(rng);
    const auto img = Images(rig, w);
    if (!img) continue;
    // Preimages under N of the same world pair give identical image tuples.
    const Mat<Rational> inv = Inverse(motion.matrix());
    const ProjectivePoint<Rational> nx(inv * std::span<const Rational>(w.x.coords()));
    const ProjectivePoint<Rational> ny(inv * std::span<const Rational>(w.y.coords()));
    ImagePair moved_img;
    ASSERT_TRUE(ExactImages(moved, nx, &moved_img.u));
    ASSERT_TRUE(ExactImages(moved, ny, &moved_img.v));
    EXPECT_EQ(QOracle(nx.coords(), ny.coords()) == 0, QOracle(w.x.coords(), w.y.coords()) == 0);
    EXPECT_EQ(RigidMembershipByEquations(moved, moved_img.u, moved_img.v, Family::kOcticSixteen),
              RigidMembershipByEquations(rig, img->u, img->v, Family::kOcticSixteen));
  }
}

TEST(Properties, LeftActionCovariance) {
  Rng rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rig = RandomRig(1200 + trial, 2);
    std::vector<Mat<Rational>> ms;
    while (ms.size() < 2) {
      auto m = RandomIntMatrix(rng, 3, 3);
      if (LeibnizDet(m) != 0) ms.push_back(m);
    }
    const auto moved = ApplyLeftAction(rig, ms);
    const auto img = Images(rig, trial % 2 ? SampleUnitPair(rng) : SampleGenericPair(rng));
    if (!img) continue;
    EXPECT_EQ(RigidMembershipByEquations(moved, TransformTuple(img->u, ms),
                                         TransformTuple(img->v, ms), Family::kOcticFull),
              RigidMembershipByEquations(rig, img->u, img->v, Family::kOcticFull));
  }
}

TEST(Coplanar, Residuals) {
  Rng rng(53);
  const std::vector<std::array<TriangulationWitness, 4>> choices{
      {{{0, 1, 0}, {0, 1, 1}, {0, 1, 0}, {0, 1, 1}}},
      {{{0, 1, 1}, {0, 1, 0}, {0, 1, 2}, {0, 1, 0}}}};
  for (int trial = 0; trial < 20; ++trial) {
    const auto rig = RandomRig(1300 + trial, 2);
    // Points in the plane z = 3x - y + 2.
    std::array<ImageTuple<Rational>, 4> planar, generic;
    bool ok = true;
    for (int p = 0; p < 4; ++p) {
      const Rational x = rng.UniformInt(-20, 20), y = rng.UniformInt(-20, 20);
      ok &= ExactImages(rig, ProjectivePoint<Rational>({x, y, 3 * x - y + 2, 1}), &planar[p]);
      ok &= ExactImages(rig, RandomAffinePoint(rng), &generic[p]);
    }
    if (!ok) continue;
    for (const auto& r : CoplanarResiduals(rig, planar, choices)) EXPECT_EQ(r, 0);
    const auto g = CoplanarResiduals(rig, generic, choices);
    EXPECT_TRUE(std::any_of(g.begin(), g.end(), [](const Rational& r) { return r != 0; }));
    auto repeated = generic;
    repeated[3] = repeated[1];
    for (const auto& r : CoplanarResiduals(rig, repeated, choices)) EXPECT_EQ(r, 0);
    const ConstraintSystem<Rational> sys(rig, Family::kCoplanar);
    EXPECT_TRUE(sys.Evaluate({planar[0], planar[1], planar[2], planar[3]}).AllVanish({}));
  }
}

TEST(GeneralDE, Examples) {
  Rng rng(54);
  const auto q = UnitDistanceQ<Rational>();
  BihomForm<Rational> x3y3(1, 1);
  x3y3.AddTerm({0, 0, 0, 1}, {0, 0, 0, 1}, 1);
  BihomForm<Rational> diff(1, 1);
  diff.AddTerm({1, 0, 0, 0}, {0, 0, 0, 1}, 1);
  diff.AddTerm({0, 0, 0, 1}, {1, 0, 0, 0}, -1);
  const auto t = Polarize(q);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rig = RandomRig(1400 + trial, 2);
    const auto w = SampleGenericPair(rng);
    const auto img = Images(rig, w);
    if (!img) continue;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) {
        const TriangulationWitness a{0, 1, i}, b{0, 1, k};
        EXPECT_EQ(GeneralConstraintEval(rig, q, a, b, img->u, img->v),
                  OcticEval(rig, t, {0, 1, i, i}, {0, 1, k, k}, img->u, img->v));
        const auto wa = Wedge5TildeRaw(AssembleB(rig, 0, 1, img->u[0], img->u[1]), i);
        const auto wb = Wedge5TildeRaw(AssembleB(rig, 0, 1, img->v[0], img->v[1]), k);
        EXPECT_EQ(GeneralConstraintEval(rig, x3y3, a, b, img->u, img->v) == 0,
                  wa[3] == 0 || wb[3] == 0);
      }
    // Second point shares the first affine coordinate of the first.
    auto yc = w.y.coords();
    yc[0] = w.x[0] / w.x[3] * yc[3];
    ImageTuple<Rational> v;
    if (!ExactImages(rig, ProjectivePoint<Rational>(yc), &v)) continue;
    for (int i = 0; i < 3; ++i)
      EXPECT_EQ(GeneralConstraintEval(rig, diff, {0, 1, i}, {0, 1, i}, img->u, v), 0);
  }
  BihomForm<Rational> only_x(2, 0);
  EXPECT_TRUE(ThrowsCode(ErrorCode::kWrongBidegree, [&] {
    GeneralConstraintEval(IeRig(), only_x, {}, {}, {Pt({0, 0, 1}), Pt({1, 0, 1})},
                          {Pt({0, 0, 1}), Pt({1, 0, 1})});
  }));
}

TEST(Distances, DiscriminantAndTriangle) {
  EXPECT_EQ(CollinearityDiscriminant<Rational>(1, 1, 2), 0);
  EXPECT_EQ(CollinearityDiscriminant<Rational>(1, 1, 1), 3);
  EXPECT_FALSE(TriangleInequalityOk<Rational>(1, 2, 5));
  EXPECT_TRUE(TriangleInequalityOk<Rational>(3, 4, 5));
  EXPECT_FALSE(TriangleInequalityOk<Rational>(1, 1, 2));
  EXPECT_TRUE(ThrowsCode(ErrorCode::kNonPositiveDistance,
                         [] { CollinearityDiscriminant<Rational>(0, 1, 1); }));
  EXPECT_TRUE(ThrowsCode(ErrorCode::kNonPositiveDistance,
                         [] { TriangleInequalityOk<Rational>(1, -1, 1); }));
  // Heron: the discriminant is 16 times the squared area.
  Rng rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational a = rng.UniformInt(1, 30), b = rng.UniformInt(1, 30), c = rng.UniformInt(1, 30);
    const Rational disc = CollinearityDiscriminant(a, b, c);
    const bool strict = a + b > c && a + c > b && b + c > a;
    EXPECT_EQ(TriangleInequalityOk(a, b, c), strict);
    EXPECT_EQ(disc > 0, strict);
  }
}

TEST(Chow, MapExamples) {
  const auto a = ChowMap(Pt({1, 0, 0}), Pt({1, 0, 0}));
  EXPECT_EQ(a.matrix(), (Mat<Rational>{{2, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
  EXPECT_EQ(a.Determinant(), 0);
  const auto b = ChowMap(Pt({0, 0, 1}), Pt({0, 2, 1}));
  EXPECT_EQ(b.matrix(), (Mat<Rational>{{0, 0, 0}, {0, 0, 2}, {0, 2, 2}}));
  EXPECT_EQ(b.Determinant(), 0);
  EXPECT_TRUE(ThrowsCode(ErrorCode::kShapeMismatch,
                         [] { ChowMatrix<Rational>(Mat<Rational>{{1, 2, 0}, {0, 1, 0}, {0, 0, 1}}); }));
}

TEST(Chow, RoundTrip) {
  Rng rng(56);
  for (int trial = 0; trial < 200; ++trial) {
    const ProjectivePoint<Rational> u(RandomNonzeroVector(rng, 3)), v(RandomNonzeroVector(rng, 3));
    const auto a = ChowMap(u, v);
    EXPECT_EQ(LeibnizDet(a.matrix()), 0);
    EXPECT_EQ(a.matrix(), ChowMap(v, u).matrix());
    EXPECT_TRUE(SameUnorderedPair(ChowFactor(a), {u, v}));
    // Same pair in floating point.
    Vec<double> ud, vd;
    for (const auto& c : u.coords()) ud.push_back(c.get_d());
    for (const auto& c : v.coords()) vd.push_back(c.get_d());
    const ProjectivePoint<double> uf(ud), vf(vd);
    EXPECT_TRUE(SameUnorderedPair(ChowFactor(ChowMap(uf, vf)), {uf, vf}));
  }
  const auto e1 = Pt({1, 0, 0}), e2 = Pt({0, 1, 0});
  EXPECT_TRUE(SameUnorderedPair(ChowFactor(ChowMap(e1, e2)), {e1, e2}));
  const auto u = Pt({2, -3, 5});
  EXPECT_TRUE(SameUnorderedPair(ChowFactor(ChowMap(u, u)), {u, u}));
}

TEST(Chow, FactorErrors) {
  EXPECT_TRUE(ThrowsCode(ErrorCode::kRankThree,
                         [] { ChowFactor(ChowMatrix<Rational>(Mat<Rational>::Identity(3))); }));
  const ChowMatrix<Rational> complex(Mat<Rational>{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  EXPECT_TRUE(ThrowsCode(ErrorCode::kComplexSplit, [&] { ChowFactor(complex); }));
  const ChowMatrix<Rational> irrational(Mat<Rational>{{1, 0, 0}, {0, -2, 0}, {0, 0, 0}});
  EXPECT_TRUE(ThrowsCode(ErrorCode::kIrrationalSplit, [&] { ChowFactor(irrational); }));
  // Real but irrational lines still split in floating point.
  const ChowMatrix<double> real(Mat<double>{{1, 0, 0}, {0, -2, 0}, {0, 0, 0}});
  const auto pair = ChowFactor(real);
  EXPECT_NEAR(ChowMap(pair.first, pair.second).Determinant(), 0, 1e-12);
}

}  // namespace
}  // namespace rigidmv
