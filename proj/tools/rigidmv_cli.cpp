// Command-line front end: every input and output is a JSON document.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rigidmv/dimension.hpp"
#include "rigidmv/experiments.hpp"
#include "rigidmv/random.hpp"
#include "rigidmv/refine.hpp"

using namespace rigidmv;

namespace {

struct Globals {
  std::string backend = "exact";
  std::uint64_t seed = 1;
  std::string json_out;
};

int Emit(const Globals& g, const Json& doc, bool ok) {
  const std::string text = doc.dump(2);
  std::cout << text << "\n";
  if (!g.json_out.empty()) {
    std::ofstream out(g.json_out);
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + g.json_out);
    out << text << "\n";
  }
  return ok ? 0 : 1;
}

bool Exact(const Globals& g) {
  if (g.backend == "exact") return true;
  if (g.backend == "float") return false;
  throw Error(ErrorCode::kInvalidArgument, "--backend must be exact or float");
}

template <typename T>
CameraRig<T> LoadRig(const std::string& arg, const Globals& g, int n = 2) {
  if (arg.empty()) {
    const auto rig = RandomRig(g.seed, n);
    if constexpr (ScalarTraits<T>::kExact) {
      return rig;
    } else {
      return ToDouble(rig);
    }
  }
  return RigFromJson<T>(LoadJsonArgument(arg));
}

std::vector<int> ParseIntList(const std::vector<std::string>& items) {
  std::vector<int> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  }
  return out;
}

template <typename T>
int Project(const Globals& g, const std::string& rig_arg, const std::vector<std::string>& worlds) {
  const auto rig = LoadRig<T>(rig_arg, g);
  Json tuples = Json::array();
  for (const auto& w : worlds) {
    const auto x = PointFromJson<T>(LoadJsonArgument(w), true);
    auto tuple = ForwardMap(rig, x);
    if constexpr (ScalarTraits<T>::kExact) tuple = IntegerTuple(tuple);
    tuples.push_back(TupleToJson(tuple));
  }
  return Emit(g, Json{{"tuples", tuples}}, true);
}

template <typename T>
int TriangulateCmd(const Globals& g, const std::string& rig_arg, const std::string& tuple_arg) {
  const auto rig = LoadRig<T>(rig_arg, g);
  const auto tuple = TupleFromJson<T>(LoadJsonArgument(tuple_arg));
  Json out{{"in_multiview_variety", MultiviewMembership(rig, tuple).member}};
  if (!out["in_multiview_variety"].get<bool>()) {
    out["triangulable"] = false;
    return Emit(g, out, false);
  }
  const auto tri = IsTriangulable(rig, tuple);
  out["triangulable"] = tri.triangulable;
  if (tri.triangulable) {
    const auto sol = Triangulate(rig, tuple);
    out["world"] = PointToJson(sol.world);
    if (!ScalarTraits<T>::IsZero(sol.world[3], 0.0)) {
      out["affine"] = Json::array();
      for (int i = 0; i < 3; ++i) out["affine"].push_back(ScalarToJson(T(sol.world[i] / sol.world[3])));
    }
    out["witness"] = {{"j", sol.witness.j}, {"k", sol.witness.k}, {"row", sol.witness.row}};
    Json lambdas = Json::array();
    for (const auto& l : sol.all_lambdas) lambdas.push_back(ScalarToJson(l));
    out["lambdas"] = lambdas;
  }
  return Emit(g, out, tri.triangulable);
}

template <typename T>
int Check(const Globals& g, const std::string& rig_arg, const std::string& u_arg,
          const std::string& v_arg, const std::string& family) {
  const auto rig = LoadRig<T>(rig_arg, g);
  const auto u = TupleFromJson<T>(LoadJsonArgument(u_arg));
  const auto v = TupleFromJson<T>(LoadJsonArgument(v_arg));
  const bool member = family == "oracle" ? RigidMembershipOracle(rig, u, v)
                                         : RigidMembershipByEquations(rig, u, v, ParseFamily(family));
  return Emit(g, Json{{"family", family}, {"backend", ScalarTraits<T>::kName}, {"member", member}},
              member);
}

template <typename T>
int Evaluate(const Globals& g, const std::string& rig_arg, const std::string& family,
             const std::vector<std::string>& tuple_args, const std::string& distances,
             bool describe) {
  const auto rig = LoadRig<T>(rig_arg, g);
  ConstraintParams<T> params;
  if (!distances.empty()) {
    const Json d = LoadJsonArgument(distances);
    for (int i = 0; i < 3; ++i) params.distances[i] = ScalarFromJson<T>(d.at(i));
  }
  const ConstraintSystem<T> system(rig, ParseFamily(family), params);
  Json out = SystemToJson(system);
  if (!describe) out.erase("indices");
  if (!tuple_args.empty()) {
    std::vector<ImageTuple<T>> tuples;
    for (const auto& t : tuple_args) tuples.push_back(TupleFromJson<T>(LoadJsonArgument(t)));
    const auto eval = system.Evaluate(tuples);
    out["all_vanish"] = eval.AllVanish(rig.tolerances());
    out["nonzero"] = eval.NonzeroCount(rig.tolerances());
    out["values"] = EvaluationToJson(system, eval);
    return Emit(g, out, eval.AllVanish(rig.tolerances()));
  }
  return Emit(g, out, true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigid multiview varieties: constraints, triangulation and verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--backend", g.backend, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--json-out", g.json_out, "Also write the JSON result to this path");

  std::string rig_arg, tuple_arg, u_arg, v_arg, family = "full", scenario = "RIGID_PAIR",
                                                    distances, experiment;
  std::vector<std::string> worlds, tuples, ns_arg;
  int n = 2, height = 20, samples = 100, rigs = 5, base_points = 5, max_iterations = 200;
  bool signed_entries = false, exact_rank = false, timing = false, describe = false;
  int expect_span = -1, expect_quotient = -1;

  auto* gen = app.add_subcommand("gen-rig", "Random rig with focal points in general position");
  gen->add_option("--n", n, "Number of cameras")->check(CLI::Range(2, 64));
  gen->add_option("--height", height, "Entries drawn from [0, height-1]");
  gen->add_flag("--signed", signed_entries, "Draw entries from [-height, height]");

  auto* project = app.add_subcommand("project", "Images of world points");
  project->add_option("--rig", rig_arg, "Rig JSON (inline or file)")->required();
  project->add_option("--world", worlds, "World point: affine 3-array or homogeneous 4-array")
      ->required()
      ->allow_extra_args(false);

  auto* tri = app.add_subcommand("triangulate", "Recover the world point of an image tuple");
  tri->add_option("--rig", rig_arg)->required();
  tri->add_option("--tuple", tuple_arg, "Array of 3-arrays")->required();

  auto* check = app.add_subcommand("check", "Rigid membership of an image tuple pair");
  check->add_option("--rig", rig_arg)->required();
  check->add_option("--u", u_arg)->required();
  check->add_option("--v", v_arg)->required();
  check->add_option("--family", family, "full | nine | sixteen | oracle")
      ->check(CLI::IsMember({"full", "nine", "sixteen", "oracle"}));

  auto* eval = app.add_subcommand("evaluate", "Describe or evaluate a constraint family");
  eval->add_option("--rig", rig_arg)->required();
  eval->add_option("--family", family, "Family name, e.g. OCTIC_NINE or COPLANAR")->required();
  eval->add_option("--tuple", tuples, "Image tuples in order (u, v, ...)")->allow_extra_args(false);
  eval->add_option("--distances", distances, "[d12, d13, d23] for PAIRWISE_DISTANCE");
  eval->add_flag("--describe", describe, "Include the index enumeration");

  auto* span = app.add_subcommand("span-dim", "Span of the 441 octics and quotient by the ideal component (n = 2)");
  span->add_option("--rig", rig_arg, "Rig JSON; random from --seed when omitted");
  span->add_flag("--exact-rank", exact_rank, "Rational elimination instead of mod p");
  span->add_option("--expect-span", expect_span);
  span->add_option("--expect-quotient", expect_quotient);

  auto* counts = app.add_subcommand("counts", "Conjectured minimal generator counts");
  counts->add_option("--n", n)->required()->check(CLI::Range(2, 1000));

  auto* dim = app.add_subcommand("dimension", "Numeric dimension of a constrained image variety");
  dim->add_option("--rig", rig_arg, "Rig JSON; random from --seed when omitted");
  dim->add_option("--n", n, "Cameras for a random rig");
  dim->add_option("--scenario", scenario, "RIGID_PAIR | COPLANAR_4 | PAIRWISE_3");
  dim->add_option("--distances", distances, "[d12, d13, d23] for PAIRWISE_3");
  dim->add_option("--base-points", base_points);

  auto* refine = app.add_subcommand("refine", "Unit-distance triangulation from noisy images");
  refine->add_option("--rig", rig_arg)->required();
  refine->add_option("--u", u_arg)->required();
  refine->add_option("--v", v_arg)->required();
  refine->add_option("--max-iterations", max_iterations);

  auto* verify = app.add_subcommand("verify", "Run a seeded verification experiment");
  verify->add_option("--experiment", experiment)->required()->check(CLI::IsMember(ExperimentTags()));
  verify->add_option("--n", ns_arg, "Camera counts (repeatable or comma separated)");
  verify->add_option("--samples", samples);
  verify->add_option("--rigs", rigs, "Rigs for SPAN_126_9");
  verify->add_option("--height", height);
  verify->add_flag("--exact-rank", exact_rank);
  verify->add_flag("--timing", timing, "Record wall-clock seconds in the report");

  CLI11_PARSE(app, argc, argv);

  try {
    const bool exact = Exact(g);
    if (*gen) {
      const auto rig = RandomRig(g.seed, n, height, signed_entries);
      return Emit(g, exact ? RigToJson(rig) : RigToJson(ToDouble(rig)), true);
    }
    if (*project) return exact ? Project<Rational>(g, rig_arg, worlds) : Project<double>(g, rig_arg, worlds);
    if (*tri) {
      return exact ? TriangulateCmd<Rational>(g, rig_arg, tuple_arg)
                   : TriangulateCmd<double>(g, rig_arg, tuple_arg);
    }
    if (*check) {
      return exact ? Check<Rational>(g, rig_arg, u_arg, v_arg, family)
                   : Check<double>(g, rig_arg, u_arg, v_arg, family);
    }
    if (*eval) {
      return exact ? Evaluate<Rational>(g, rig_arg, family, tuples, distances, describe)
                   : Evaluate<double>(g, rig_arg, family, tuples, distances, describe);
    }
    if (*span) {
      const auto rig = LoadRig<Rational>(rig_arg, g);
      const auto octics = ExpandAllOctics(rig, Polarize(UnitDistanceQ<Rational>()));
      const auto component = IdealComponentBasis(rig, {2, 2, 2, 2});
      SpanOptions opts;
      opts.seed = g.seed;
      opts.method = exact_rank ? RankMethod::kExact : RankMethod::kModular;
      const auto s = SpanDimension(octics, opts);
      const auto q = QuotientDimension(component, octics, opts);
      const bool ok = (expect_span < 0 || s.rank == expect_span) &&
                      (expect_quotient < 0 || q.quotient() == expect_quotient);
      return Emit(g,
                  Json{{"octics", octics.size()},
                       {"monomials", s.columns},
                       {"span", s.rank},
                       {"component_size", component.size()},
                       {"component_rank", q.base_rank},
                       {"combined_rank", q.combined_rank},
                       {"quotient", q.quotient()},
                       {"method", exact_rank ? "exact" : "modular"},
                       {"primes", s.primes}},
                  ok);
    }
    if (*counts) {
      const auto c = ConjectureGeneratorCount(n);
      return Emit(g, CountsToJson(c), c.consistent());
    }
    if (*dim) {
      const auto rig = LoadRig<double>(rig_arg, g, n);
      DimensionOptions opts;
      opts.seed = g.seed;
      opts.base_points = base_points;
      if (!distances.empty()) {
        const Json d = LoadJsonArgument(distances);
        for (int i = 0; i < 3; ++i) opts.distances[i] = ScalarFromJson<double>(d.at(i));
      }
      const auto r = NumericDimension(rig, ParseScenario(scenario), opts);
      return Emit(g,
                  Json{{"scenario", scenario},
                       {"dimension", r.dimension},
                       {"ranks", r.ranks},
                       {"parameters", r.parameters},
                       {"stable", r.stable}},
                  r.stable);
    }
    if (*refine) {
      const auto rig = LoadRig<double>(rig_arg, g);
      RefineOptions opts;
      opts.max_iterations = max_iterations;
      const auto r = RigidTriangulateRefine(rig, TupleFromJson<double>(LoadJsonArgument(u_arg)),
                                            TupleFromJson<double>(LoadJsonArgument(v_arg)), opts);
      return Emit(g,
                  Json{{"x", r.x},
                       {"y", r.y},
                       {"residual", r.residual},
                       {"initial_residual", r.initial_residual},
                       {"iterations", r.iterations},
                       {"converged", r.converged}},
                  r.residual <= r.initial_residual);
    }
    if (*verify) {
      ExperimentConfig cfg;
      cfg.seed = g.seed;
      cfg.samples = samples;
      cfg.rigs = rigs;
      cfg.height = height;
      cfg.exact_rank = exact_rank;
      cfg.record_timing = timing;
      if (!ns_arg.empty()) cfg.ns = ParseIntList(ns_arg);
      if (experiment == "COR34_SIXTEEN" && ns_arg.empty()) cfg.ns = {3};
      const auto report = RunExperiment(experiment, cfg);
      return Emit(g, ReportToJson(report), report.pass);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
