#include <gtest/gtest.h>

#include "rigidmv/triangulate.hpp"
#include "test_support.hpp"

namespace rigidmv {
namespace {

using testing::CameraIe;
using testing::LeibnizDet;
using testing::ParallelExact;
using testing::Pt;
using testing::RandomIntVector;
using testing::RandomNonzeroVector;
using testing::ThrowsCode;

CameraRig<Rational> IeRig() { return CameraRig<Rational>({CameraIe(0), CameraIe(1)}); }

bool OnFocal(const CameraRig<Rational>& rig, const ProjectivePoint<Rational>& x) {
  for (int i = 0; i < rig.size(); ++i)
    if (ProjectivelyEqual(x, rig.camera(i).focal_point())) return true;
  return false;
}

// Signed minors with row `row` deleted, straight from the permutation
// expansion.
Vec<Rational> BruteWedge(const Mat<Rational>& b, int row) {
  const Mat<Rational> m = b.WithoutRow(row);
  Vec<Rational> w(6);
  for (int c = 0; c < 6; ++c) w[c] = (c % 2 ? -1 : 1) * LeibnizDet(m.WithoutCol(c));
  return w;
}

TEST(AssembleB, BlockLayoutAndDeterminant) {
  const auto rig = IeRig();
  const auto b = AssembleB(rig, 0, 1, Pt({0, 0, 1}), Pt({1, 0, 1}));
  EXPECT_EQ(b.matrix(2, 4), 1);
  EXPECT_EQ(b.matrix(3, 5), 1);
  EXPECT_EQ(b.matrix(5, 5), 1);
  EXPECT_EQ(b.matrix(0, 5), 0);
  EXPECT_EQ(b.matrix(3, 3), 1);
  EXPECT_EQ(LeibnizDet(b.matrix), 0);

  Rng rng(31);
  int nonzero = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = AssembleB(rig, 0, 1, ProjectivePoint<Rational>(RandomNonzeroVector(rng, 3)),
                             ProjectivePoint<Rational>(RandomNonzeroVector(rng, 3)));
    nonzero += LeibnizDet(g.matrix) != 0;
  }
  EXPECT_GE(nonzero, 15);
  EXPECT_TRUE(ThrowsCode(ErrorCode::kIndexOutOfRange,
                         [&] { AssembleB(rig, 0, 2, Pt({0, 0, 1}), Pt({1, 0, 1})); }));
}

TEST(AssembleB, EpipolePairHasRankFour) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto rig = RandomRig(seed, 2);
    const auto b = AssembleB(rig, 0, 1, rig.Epipole(0, 1), rig.Epipole(1, 0));
    EXPECT_EQ(Rank(b.matrix).rank, 4);
    for (int row = 0; row < 6; ++row)
      for (const auto& x : Wedge5(b, row)) EXPECT_EQ(x, 0);
    EXPECT_FALSE(Wedge5Tilde(b, 0).has_value());
  }
}

TEST(Wedge5, MatchesBruteForceMinors) {
  Rng rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rig = RandomRig(100 + trial, 2);
    const auto b = AssembleB(rig, 0, 1, ProjectivePoint<Rational>(RandomNonzeroVector(rng, 3)),
                             ProjectivePoint<Rational>(RandomNonzeroVector(rng, 3)));
    for (int row = 0; row < 6; ++row) {
      const auto w = Wedge5(b, row);
      EXPECT_EQ(w, BruteWedge(b.matrix, row));
      // Cramer structure: rows other than `row` annihilate the wedge.
      const auto bw = b.matrix * std::span<const Rational>(w);
      for (int r = 0; r < 6; ++r)
        if (r != row) {
          EXPECT_EQ(bw[r], 0);
        }
      EXPECT_EQ(bw[row], (row % 2 ? -1 : 1) * LeibnizDet(b.matrix));
      const auto raw = Wedge5TildeRaw(b, row);
      for (int c = 0; c < 4; ++c) EXPECT_EQ(raw[c], w[c]);
    }
  }
}

TEST(Wedge5, ConsistentPairExample) {
  const auto rig = IeRig();
  const auto b = AssembleB(rig, 0, 1, Pt({0, 0, 1}), Pt({1, 0, 1}));
  int seen = 0;
  for (int row = 0; row < 6; ++row) {
    const auto w = Wedge5Tilde(b, row);
    if (!w) continue;
    ++seen;
    EXPECT_TRUE(ProjectivelyEqual(*w, Pt({0, 0, 1, 1})));
  }
  EXPECT_GT(seen, 0);
}

TEST(Wedge5, ParallelToWorldPointForImages) {
  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rig = RandomRig(200 + trial, 2);
    const ProjectivePoint<Rational> x(RandomNonzeroVector(rng, 4));
    if (OnFocal(rig, x)) continue;
    const auto t = ForwardMap(rig, x);
    const auto b = AssembleB(rig, 0, 1, t[0], t[1]);
    int seen = 0;
    for (int row = 0; row < 6; ++row) {
      const auto raw = Wedge5TildeRaw(b, row);
      const Vec<Rational> w(raw.begin(), raw.end());
      if (w == Vec<Rational>(4, 0)) continue;
      ++seen;
      EXPECT_TRUE(ParallelExact(w, x.coords()));
    }
    EXPECT_GT(seen, 0);
  }
}

TEST(Triangulable, DichotomyTwoViews) {
  Rng rng(34);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto rig = RandomRig(seed, 2);
    const ImageTuple<Rational> epi{rig.Epipole(0, 1), rig.Epipole(1, 0)};
    EXPECT_FALSE(IsTriangulable(rig, epi).triangulable);
    EXPECT_TRUE(ThrowsCode(ErrorCode::kNotTriangulable, [&] { Triangulate(rig, epi); }));

    // Points of the multiview variety with one coordinate at an epipole are still triangulable.
    const ImageTuple<Rational> half{rig.Epipole(0, 1),
                                    ProjectivePoint<Rational>(RandomNonzeroVector(rng, 3))};
    if (MultiviewMembership(rig, half).member && !ProjectivelyEqual(half[1], rig.Epipole(1, 0))) {
      EXPECT_TRUE(IsTriangulable(rig, half).triangulable);
    }

    const ProjectivePoint<Rational> x(RandomNonzeroVector(rng, 4));
    if (OnFocal(rig, x)) continue;
    const auto t = ForwardMap(rig, x);
    const auto res = IsTriangulable(rig, t);
    EXPECT_TRUE(res.triangulable);
    ASSERT_TRUE(res.witness.has_value());
  }
}

TEST(Triangulable, RankFourOnlyAtEpipolePair) {
  // Enumerate the rank-deficiency locus of B and compare with the epipoles.
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto rig = RandomRig(seed, 2);
    const auto locus = ComputeRankDeficiencyLocus(rig, 0, 1);
    ASSERT_TRUE(locus.unique);
    EXPECT_TRUE(ProjectivelyEqual(*locus.u_j, rig.Epipole(0, 1)));
    EXPECT_TRUE(ProjectivelyEqual(*locus.u_k, rig.Epipole(1, 0)));
  }
}

TEST(Triangulable, ThreeViewsAlwaysTriangulable) {
  Rng rng(35);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rig = RandomRig(300 + trial, 3);
    // Includes points on baselines, whose images hit epipoles.
    const int a = trial % 3, b = (trial + 1) % 3;
    Vec<Rational> x = trial % 2 ? RandomNonzeroVector(rng, 4) : Vec<Rational>(4);
    if (trial % 2 == 0) {
      const Rational s = rng.UniformInt(1, 5), r = rng.UniformInt(1, 5);
      for (int c = 0; c < 4; ++c)
        x[c] = s * rig.camera(a).focal_point()[c] + r * rig.camera(b).focal_point()[c];
    }
    const ProjectivePoint<Rational> p(x);
    if (OnFocal(rig, p)) continue;
    const auto t = ForwardMap(rig, p);
    EXPECT_TRUE(IsTriangulable(rig, t).triangulable);
    EXPECT_TRUE(ProjectivelyEqual(Triangulate(rig, t).world, p));
  }
}

TEST(Triangulate, IeExample) {
  const auto rig = IeRig();
  const auto sol = Triangulate(rig, {Pt({0, 0, 1}), Pt({1, 0, 1})});
  EXPECT_TRUE(ProjectivelyEqual(sol.world, Pt({0, 0, 1, 1})));
  EXPECT_EQ(sol.rank_of_b, 5);
}

TEST(Triangulate, RoundTripAndLambdas) {
  Rng rng(36);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    const auto rig = RandomRig(400 + trial, n);
    const ProjectivePoint<Rational> x(RandomIntVector(rng, 4, -50, 50) == Vec<Rational>(4, 0)
                                          ? Vec<Rational>{0, 0, 0, 1}
                                          : RandomIntVector(rng, 4, -50, 50));
    if (OnFocal(rig, x)) continue;
    const auto t = ForwardMap(rig, x);
    const auto sol = Triangulate(rig, t);
    EXPECT_TRUE(ProjectivelyEqual(sol.world, x));
    const int j = sol.witness.j, k = sol.witness.k;
    const auto axj = rig.camera(j).matrix() * std::span<const Rational>(sol.world.coords());
    const auto axk = rig.camera(k).matrix() * std::span<const Rational>(sol.world.coords());
    for (int c = 0; c < 3; ++c) {
      EXPECT_EQ(axj[c], sol.lambdas[0] * t[j][c]);
      EXPECT_EQ(axk[c], sol.lambdas[1] * t[k][c]);
    }
    ASSERT_EQ(sol.all_lambdas.size(), static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
      const auto axm = rig.camera(m).matrix() * std::span<const Rational>(sol.world.coords());
      for (int c = 0; c < 3; ++c) EXPECT_EQ(axm[c], sol.all_lambdas[m] * t[m][c]);
    }
  }
}

TEST(Triangulate, NotInVariety) {
  const auto rig = IeRig();
  EXPECT_TRUE(ThrowsCode(ErrorCode::kNotInVariety,
                         [&] { Triangulate(rig, {Pt({0, 0, 1}), Pt({1, 1, 1})}); }));
  EXPECT_TRUE(ThrowsCode(ErrorCode::kNotInVariety,
                         [&] { IsTriangulable(rig, {Pt({0, 0, 1}), Pt({1, 1, 1})}); }));
}

TEST(Triangulate, FloatBackendRoundTrip) {
  Rng rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rig = RandomRig(500 + trial, 3);
    const ProjectivePoint<Rational> x(RandomNonzeroVector(rng, 4));
    if (OnFocal(rig, x)) continue;
    const auto t = ToDouble(ForwardMap(rig, x));
    const auto sol = Triangulate(ToDouble(rig), t);
    Vec<double> xd;
    for (const auto& c : x.coords()) xd.push_back(c.get_d());
    EXPECT_TRUE(ProjectivelyEqual(sol.world, ProjectivePoint<double>(xd)));
  }
}

}  // namespace
}  // namespace rigidmv
