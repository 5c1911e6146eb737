#include "rigidmv/experiments.hpp"

#include <chrono>
#include <functional>
#include <map>

#include "rigidmv/random.hpp"

namespace rigidmv {
namespace {

using Q = Rational;

struct ImagePair {
  WorldPair world;
  ImageTuple<Q> u;
  ImageTuple<Q> v;
};

// Images of a sampled world pair, redrawn if a point hits a focal point.
ImagePair SamplePair(const CameraRig<Q>& rig, Rng& rng, int bound, bool unit) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    ImagePair p{unit ? SampleUnitPair(rng, bound) : SampleGenericPair(rng, bound), {}, {}};
    if (ExactImages(rig, p.world.x, &p.u) && ExactImages(rig, p.world.y, &p.v)) return p;
  }
  throw Error(ErrorCode::kExhausted, "no projectable world pair");
}

ImageTuple<Q> SampleTuple(const CameraRig<Q>& rig, Rng& rng, int bound) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    ImageTuple<Q> u;
    if (ExactImages(rig, RandomAffinePoint(rng, bound), &u)) return u;
  }
  throw Error(ErrorCode::kExhausted, "no projectable world point");
}

// A tuple off V_A: the image in the last camera is moved off its epipolar
// constraints.
ImageTuple<Q> PerturbTuple(const CameraRig<Q>& rig, ImageTuple<Q> u, Rng& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    Vec<Q> c = u.back().coords();
    c[rng.UniformInt(0, 2)] += rng.UniformInt(1, 10);
    ImageTuple<Q> w = u;
    w.back() = ProjectivePoint<Q>(c);
    if (!MultiviewMembership(rig, w).member) return w;
  }
  throw Error(ErrorCode::kExhausted, "could not leave the multiview variety");
}

ImageTuple<Q> EpipolePair(const CameraRig<Q>& rig) {
  return IntegerTuple({rig.Epipole(0, 1), rig.Epipole(1, 0)});
}

int CountNonzero(const Evaluation<Q>& e) { return static_cast<int>(e.NonzeroCount({})); }

Json PointJson(const std::optional<ProjectivePoint<Q>>& p) {
  return p ? PointToJson(*p) : Json(nullptr);
}

Q QValue(const WorldPair& w) {
  return UnitDistanceQ<Q>().Eval(w.x.coords(), w.y.coords());
}

struct Context {
  const ExperimentConfig& config;
  ExperimentReport& report;
};

using SampleFn = std::function<SampleRecord(int index, std::uint64_t seed, int n)>;

void RunSamples(Context& ctx, const SampleFn& fn, int samples) {
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t seed = SubSeed(ctx.config.seed, static_cast<std::uint64_t>(i));
    const int n = ctx.config.ns[i % ctx.config.ns.size()];
    SampleRecord rec = fn(i, seed, n);
    rec.index = i;
    rec.seed = seed;
    rec.n = n;
    ctx.report.samples.push_back(std::move(rec));
  }
}

SampleRecord Vanish(const ExperimentConfig& cfg, std::uint64_t seed, int n) {
  const auto rig = RandomRig(SubSeed(seed, 0), n, cfg.height);
  Rng rng(SubSeed(seed, 1));
  const auto p = SamplePair(rig, rng, cfg.bound, true);
  SampleRecord rec;
  rec.kind = "unit_pair";
  const int octic = CountNonzero(ConstraintSystem<Q>(rig, Family::kOcticFull).Evaluate({p.u, p.v}));
  const int bilinear =
      CountNonzero(ConstraintSystem<Q>(rig, Family::kMultiviewBilinear).Evaluate({p.u, p.v}));
  int trilinear = 0;
  if (n >= 3) {
    trilinear =
        CountNonzero(ConstraintSystem<Q>(rig, Family::kMultiviewTrilinear).Evaluate({p.u, p.v}));
  }
  rec.pass = octic == 0 && bilinear == 0 && trilinear == 0 && QValue(p.world) == 0;
  rec.detail = {{"nonzero_octic_full", octic},
                {"nonzero_bilinear", bilinear},
                {"nonzero_trilinear", trilinear}};
  return rec;
}

SampleRecord Separate(const ExperimentConfig& cfg, std::uint64_t seed, int n) {
  const auto rig = RandomRig(SubSeed(seed, 0), n, cfg.height);
  Rng rng(SubSeed(seed, 1));
  const auto p = SamplePair(rig, rng, cfg.bound, false);
  SampleRecord rec;
  rec.kind = "generic_pair";
  const int nine = CountNonzero(ConstraintSystem<Q>(rig, Family::kOcticNine).Evaluate({p.u, p.v}));
  const bool oracle = RigidMembershipOracle(rig, p.u, p.v);
  rec.pass = nine > 0 && !oracle;
  rec.detail = {{"q", QValue(p.world).get_str()}, {"nonzero_octic_nine", nine}, {"oracle", oracle}};
  return rec;
}

// One labelled corpus element with its expected verdict.
struct Corpus {
  std::string kind;
  ImageTuple<Q> u, v;
  bool expected;
};

Corpus MakeCorpus(const CameraRig<Q>& rig, Rng& rng, int bound, const std::string& kind) {
  if (kind == "member") {
    const auto p = SamplePair(rig, rng, bound, true);
    return {kind, p.u, p.v, true};
  }
  if (kind == "nonmember") {
    const auto p = SamplePair(rig, rng, bound, false);
    return {kind, p.u, p.v, false};
  }
  if (kind == "epipole_v") return {kind, SampleTuple(rig, rng, bound), EpipolePair(rig), true};
  if (kind == "epipole_u") return {kind, EpipolePair(rig), SampleTuple(rig, rng, bound), true};
  if (kind == "off_variety") {
    const auto p = SamplePair(rig, rng, bound, true);
    return {kind, p.u, PerturbTuple(rig, p.v, rng), false};
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown corpus kind " + kind);
}

SampleRecord Equivalence(const ExperimentConfig& cfg, std::uint64_t seed, int n, int index,
                         Family family) {
  const auto rig = RandomRig(SubSeed(seed, 0), n, cfg.height);
  Rng rng(SubSeed(seed, 1));
  static const std::vector<std::string> kTwo = {"member", "nonmember", "epipole_v", "epipole_u",
                                                "off_variety"};
  static const std::vector<std::string> kMany = {"member", "nonmember", "off_variety"};
  const auto& kinds = n == 2 ? kTwo : kMany;
  const Corpus c = MakeCorpus(rig, rng, cfg.bound, kinds[index / cfg.ns.size() % kinds.size()]);
  SampleRecord rec;
  rec.kind = c.kind;
  const bool by_equations = RigidMembershipByEquations(rig, c.u, c.v, family);
  const bool oracle = RigidMembershipOracle(rig, c.u, c.v);
  rec.pass = by_equations == oracle && oracle == c.expected;
  rec.detail = {{"family", FamilyName(family)},
                {"equations", by_equations},
                {"oracle", oracle},
                {"expected", c.expected}};
  return rec;
}

SampleRecord Span(const ExperimentConfig& cfg, std::uint64_t seed) {
  const auto rig = RandomRig(SubSeed(seed, 0), 2, cfg.height);
  const auto octics = ExpandAllOctics(rig, Polarize(UnitDistanceQ<Q>()));
  const auto component = IdealComponentBasis(rig, {2, 2, 2, 2});
  SpanOptions opts;
  opts.seed = SubSeed(seed, 2);
  opts.method = cfg.exact_rank ? RankMethod::kExact : RankMethod::kModular;
  const auto span = SpanDimension(octics, opts);
  const auto quotient = QuotientDimension(component, octics, opts);
  SampleRecord rec;
  rec.kind = "rig";
  rec.pass = span.rank == 126 && quotient.quotient() == 9;
  rec.detail = {{"octics", octics.size()},
                {"span", span.rank},
                {"monomials", span.columns},
                {"component_size", component.size()},
                {"component_rank", quotient.base_rank},
                {"combined_rank", quotient.combined_rank},
                {"quotient", quotient.quotient()},
                {"primes", span.primes}};
  return rec;
}

SampleRecord EpipoleComponent(const ExperimentConfig& cfg, std::uint64_t seed) {
  const auto rig = RandomRig(SubSeed(seed, 0), 2, cfg.height);
  Rng rng(SubSeed(seed, 1));
  const auto locus = ComputeRankDeficiencyLocus(rig, 0, 1);
  const auto e = EpipolePair(rig);
  SampleRecord rec;
  rec.kind = "rig";
  bool ok = locus.unique && ProjectivelyEqual(*locus.u_j, e[0]) &&
            ProjectivelyEqual(*locus.u_k, e[1]);
  const auto b = AssembleB(rig, 0, 1, e[0], e[1]);
  const int rank_b = Rank(b.matrix).rank;
  const bool in_va = MultiviewMembership(rig, e).member;
  const bool epipole_triangulable = IsTriangulable(rig, e).triangulable;
  const auto u = SampleTuple(rig, rng, cfg.bound);
  const bool random_triangulable = IsTriangulable(rig, u).triangulable;
  const ConstraintSystem<Q> full(rig, Family::kOcticFull);
  const int nonzero_v = CountNonzero(full.Evaluate({u, e}));
  const int nonzero_u = CountNonzero(full.Evaluate({e, u}));
  ok = ok && rank_b <= 4 && in_va && !epipole_triangulable && random_triangulable &&
       nonzero_u == 0 && nonzero_v == 0;
  rec.pass = ok;
  rec.detail = {{"locus_unique", locus.unique},
                {"locus_u1", PointJson(locus.u_j)},
                {"locus_u2", PointJson(locus.u_k)},
                {"epipoles", TupleToJson(e)},
                {"rank_b", rank_b},
                {"epipole_triangulable", epipole_triangulable},
                {"random_triangulable", random_triangulable},
                {"nonzero_octics", nonzero_u + nonzero_v}};
  return rec;
}

Mat<Q> RandomInvertible3(Rng& rng) {
  while (true) {
    Mat<Q> m(3, 3);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) m(r, c) = rng.UniformInt(-5, 5);
    if (Det(m) != 0) return m;
  }
}

SampleRecord GroupAction(const ExperimentConfig& cfg, std::uint64_t seed, int n, int index) {
  const auto rig = RandomRig(SubSeed(seed, 0), n, cfg.height);
  Rng rng(SubSeed(seed, 1));
  const bool member = (index / cfg.ns.size()) % 2 == 0;
  const auto p = SamplePair(rig, rng, cfg.bound, member);
  const Family family = Family::kOcticFull;
  const bool base = RigidMembershipByEquations(rig, p.u, p.v, family);

  // Right action: cameras A N see N^{-1} X where A saw X.
  const auto motion = RandomRigidMotion(rng);
  const auto moved = ApplyRightAction(rig, motion);
  const Mat<Q> inv = Inverse(motion.matrix());
  const ProjectivePoint<Q> x2(inv * std::span<const Q>(p.world.x.coords()));
  const ProjectivePoint<Q> y2(inv * std::span<const Q>(p.world.y.coords()));
  const auto u2 = IntegerTuple(ForwardMap(moved, x2));
  const auto v2 = IntegerTuple(ForwardMap(moved, y2));
  bool same_images = true;
  for (int i = 0; i < n; ++i)
    same_images = same_images && ProjectivelyEqual(u2[i], p.u[i]) && ProjectivelyEqual(v2[i], p.v[i]);
  const bool right = RigidMembershipByEquations(moved, u2, v2, family);

  // Left action: (M_i A_i) with covariantly transformed tuples.
  std::vector<Mat<Q>> ms;
  for (int i = 0; i < n; ++i) ms.push_back(RandomInvertible3(rng));
  const auto left_rig = ApplyLeftAction(rig, ms);
  const bool left = RigidMembershipByEquations(left_rig, TransformTuple(p.u, ms),
                                               TransformTuple(p.v, ms), family);
  SampleRecord rec;
  rec.kind = member ? "member" : "nonmember";
  rec.pass = base == member && right == base && left == base && same_images;
  rec.detail = {{"verdict", base}, {"right_action", right}, {"left_action", left},
                {"same_images", same_images}};
  return rec;
}

// Four world points as images; false when some point hits a focal point.
bool ImagesOf(const CameraRig<Q>& rig, const std::array<ProjectivePoint<Q>, 4>& pts,
              std::array<ImageTuple<Q>, 4>* out) {
  for (int i = 0; i < 4; ++i)
    if (!ExactImages(rig, pts[i], &(*out)[i])) return false;
  return true;
}

SampleRecord Coplanar(const ExperimentConfig& cfg, std::uint64_t seed, int n) {
  const auto rig = RandomRig(SubSeed(seed, 0), n, cfg.height);
  Rng rng(SubSeed(seed, 1));
  const ConstraintSystem<Q> system(rig, Family::kCoplanar);
  auto evaluate = [&](const std::array<ImageTuple<Q>, 4>& t) {
    return CountNonzero(system.Evaluate({t[0], t[1], t[2], t[3]}));
  };
  std::array<ImageTuple<Q>, 4> planar, generic, repeated;
  while (true) {
    const auto o = RandomAffinePoint(rng, cfg.bound);
    Vec<Q> e(3), f(3);
    for (auto& c : e) c = rng.SmallRational(10);
    for (auto& c : f) c = rng.SmallRational(10);
    std::array<ProjectivePoint<Q>, 4> pts;
    for (auto& pt : pts) {
      const Q a = rng.SmallRational(10), b = rng.SmallRational(10);
      pt = ProjectivePoint<Q>({Q(o[0] + a * e[0] + b * f[0]), Q(o[1] + a * e[1] + b * f[1]),
                               Q(o[2] + a * e[2] + b * f[2]), Q(1)});
    }
    std::array<ProjectivePoint<Q>, 4> gen{RandomAffinePoint(rng, cfg.bound),
                                          RandomAffinePoint(rng, cfg.bound),
                                          RandomAffinePoint(rng, cfg.bound),
                                          RandomAffinePoint(rng, cfg.bound)};
    std::array<ProjectivePoint<Q>, 4> rep{gen[0], gen[1], gen[2], gen[0]};
    if (ImagesOf(rig, pts, &planar) && ImagesOf(rig, gen, &generic) &&
        ImagesOf(rig, rep, &repeated))
      break;
  }
  const int nz_planar = evaluate(planar), nz_generic = evaluate(generic),
            nz_repeated = evaluate(repeated);
  SampleRecord rec;
  rec.kind = "quadruple";
  rec.pass = nz_planar == 0 && nz_generic > 0 && nz_repeated == 0;
  rec.detail = {{"evaluators", system.size()},
                {"nonzero_coplanar", nz_planar},
                {"nonzero_generic", nz_generic},
                {"nonzero_repeated", nz_repeated}};
  return rec;
}

SampleRecord PairwiseTriangle(const ExperimentConfig& cfg, std::uint64_t seed, int n) {
  const auto rig = RandomRig(SubSeed(seed, 0), n, cfg.height);
  Rng rng(SubSeed(seed, 1));
  // Triangles with rational sides and rational apex coordinates.
  static const std::array<std::array<int, 3>, 4> kSides = {
      {{3, 4, 5}, {5, 5, 6}, {13, 14, 15}, {5, 5, 8}}};
  const auto& s = kSides[rng.UniformInt(0, kSides.size() - 1)];
  Q scale = rng.SmallRational(10);
  if (scale == 0) scale = 1;
  scale = abs(scale);
  const Q d12 = s[0] * scale, d13 = s[1] * scale, d23 = s[2] * scale;
  const Q ax = (d12 * d12 + d13 * d13 - d23 * d23) / (2 * d12);
  Q ay;
  if (!RationalSqrt(Q(d13 * d13 - ax * ax), &ay)) {
    throw Error(ErrorCode::kInvalidArgument, "triangle apex is irrational");
  }
  std::array<ImageTuple<Q>, 3> images;
  while (true) {
    const auto motion = RandomRigidMotion(rng);
    const std::array<Vec<Q>, 3> local{Vec<Q>{0, 0, 0, 1}, Vec<Q>{d12, 0, 0, 1},
                                       Vec<Q>{ax, ay, 0, 1}};
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
      const ProjectivePoint<Q> x(motion.matrix() * std::span<const Q>(local[i]));
      ok = ExactImages(rig, x, &images[i]);
    }
    if (ok) break;
  }
  ConstraintParams<Q> right, wrong;
  right.distances = {d12, d13, d23};
  wrong.distances = {Q(d12 + 1), d13, d23};
  const int nz_right = CountNonzero(
      ConstraintSystem<Q>(rig, Family::kPairwiseDistance, right).Evaluate({images[0], images[1], images[2]}));
  const int nz_wrong = CountNonzero(
      ConstraintSystem<Q>(rig, Family::kPairwiseDistance, wrong).Evaluate({images[0], images[1], images[2]}));
  SampleRecord rec;
  rec.kind = "triangle";
  rec.pass = nz_right == 0 && nz_wrong > 0 && TriangleInequalityOk(d12, d13, d23) &&
             CollinearityDiscriminant(d12, d13, d23) != 0;
  rec.detail = {{"distances", {d12.get_str(), d13.get_str(), d23.get_str()}},
                {"nonzero_true_distances", nz_right},
                {"nonzero_wrong_distance", nz_wrong}};
  return rec;
}

void Counts(ExperimentReport& report) {
  static const std::map<int, long long> kKnown = {{2, 11}, {3, 177}, {4, 1176}, {5, 4940}};
  for (int n = 2; n <= 12; ++n) {
    const auto c = ConjectureGeneratorCount(n);
    SampleRecord rec;
    rec.index = n - 2;
    rec.n = n;
    rec.kind = "n";
    auto it = kKnown.find(n);
    rec.pass = c.consistent() && (it == kKnown.end() || it->second == c.total);
    rec.detail = CountsToJson(c);
    report.samples.push_back(std::move(rec));
  }
}

}  // namespace

const std::vector<std::string>& ExperimentTags() {
  static const std::vector<std::string> kTags = {
      "VANISH",  "SEPARATE",          "THM32_EQUIV",  "COR34_SIXTEEN", "SPAN_126_9",
      "COUNTS",  "EPIPOLE_COMPONENT", "GROUP_ACTION", "COPLANAR",      "PAIRWISE_TRIANGLE"};
  return kTags;
}

ExperimentReport RunExperiment(const std::string& tag, const ExperimentConfig& config) {
  if (config.ns.empty() || config.samples < 0) {
    throw Error(ErrorCode::kInvalidArgument, "experiment needs camera counts and samples >= 0");
  }
  for (int n : config.ns)
    if (n < 2) throw Error(ErrorCode::kInvalidArgument, "camera counts must be >= 2");
  ExperimentReport report;
  report.tag = tag;
  report.config = config;
  Context ctx{config, report};
  const auto start = std::chrono::steady_clock::now();

  if (tag == "VANISH") {
    RunSamples(ctx, [&](int, std::uint64_t s, int n) { return Vanish(config, s, n); },
               config.samples);
  } else if (tag == "SEPARATE") {
    RunSamples(ctx, [&](int, std::uint64_t s, int n) { return Separate(config, s, n); },
               config.samples);
  } else if (tag == "THM32_EQUIV") {
    RunSamples(ctx,
               [&](int i, std::uint64_t s, int n) {
                 return Equivalence(config, s, n, i, Family::kOcticFull);
               },
               config.samples);
  } else if (tag == "COR34_SIXTEEN") {
    for (int n : config.ns)
      if (n < 3) throw Error(ErrorCode::kInvalidArgument, "COR34_SIXTEEN needs n >= 3");
    RunSamples(ctx,
               [&](int i, std::uint64_t s, int n) {
                 return Equivalence(config, s, n, i, Family::kOcticSixteen);
               },
               config.samples);
  } else if (tag == "SPAN_126_9") {
    ExperimentConfig two = config;
    two.ns = {2};
    Context c2{two, report};
    RunSamples(c2, [&](int, std::uint64_t s, int) { return Span(config, s); }, config.rigs);
  } else if (tag == "COUNTS") {
    Counts(report);
  } else if (tag == "EPIPOLE_COMPONENT") {
    ExperimentConfig two = config;
    two.ns = {2};
    Context c2{two, report};
    RunSamples(c2, [&](int, std::uint64_t s, int) { return EpipoleComponent(config, s); },
               config.samples);
  } else if (tag == "GROUP_ACTION") {
    RunSamples(ctx, [&](int i, std::uint64_t s, int n) { return GroupAction(config, s, n, i); },
               config.samples);
  } else if (tag == "COPLANAR") {
    RunSamples(ctx, [&](int, std::uint64_t s, int n) { return Coplanar(config, s, n); },
               config.samples);
  } else if (tag == "PAIRWISE_TRIANGLE") {
    RunSamples(ctx, [&](int, std::uint64_t s, int n) { return PairwiseTriangle(config, s, n); },
               config.samples);
    report.summary["discriminant_1_1_2"] = CollinearityDiscriminant(Q(1), Q(1), Q(2)).get_str();
    report.summary["discriminant_1_1_1"] = CollinearityDiscriminant(Q(1), Q(1), Q(1)).get_str();
    report.summary["triangle_1_2_5"] = TriangleInequalityOk(Q(1), Q(2), Q(5));
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown experiment tag '" + tag + "'");
  }

  for (const auto& s : report.samples) (s.pass ? report.passed : report.failed)++;
  report.pass = report.failed == 0 && !report.samples.empty();
  if (config.record_timing) {
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

Json ReportToJson(const ExperimentReport& report) {
  Json samples = Json::array();
  for (const auto& s : report.samples) {
    samples.push_back({{"index", s.index},
                       {"seed", s.seed},
                       {"n", s.n},
                       {"kind", s.kind},
                       {"pass", s.pass},
                       {"detail", s.detail}});
  }
  Json out{{"experiment", report.tag},
           {"config",
            {{"ns", report.config.ns},
             {"samples", report.config.samples},
             {"seed", report.config.seed},
             {"height", report.config.height},
             {"bound", report.config.bound},
             {"rigs", report.config.rigs}}},
           {"passed", report.passed},
           {"failed", report.failed},
           {"pass", report.pass},
           {"summary", report.summary}};
  if (report.seconds) out["seconds"] = *report.seconds;
  out["samples"] = samples;
  return out;
}

}  // namespace rigidmv
