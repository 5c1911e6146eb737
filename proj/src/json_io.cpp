#include "rigidmv/json_io.hpp"

#include <fstream>
#include <sstream>

namespace rigidmv {

Json ScalarToJson(const Rational& x) { return x.get_str(); }
Json ScalarToJson(double x) { return x; }

template <typename T>
T ScalarFromJson(const Json& j) {
  if constexpr (ScalarTraits<T>::kExact) {
    if (j.is_string()) return ParseRational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number()) return ParseRational(j.dump());
  } else {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return ParseRational(j.get<std::string>()).get_d();
  }
  throw Error(ErrorCode::kParse, "expected a number or rational string, got " + j.dump());
}

template <typename T>
Json MatToJson(const Mat<T>& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(ScalarToJson(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

template <typename T>
Mat<T> MatFromJson(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw Error(ErrorCode::kParse, "matrix must be an array of rows");
  }
  Mat<T> m(j.size(), j[0].size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (j[r].size() != m.cols()) throw Error(ErrorCode::kParse, "ragged matrix rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = ScalarFromJson<T>(j[r][c]);
  }
  return m;
}

template <typename T>
Json PointToJson(const ProjectivePoint<T>& p) {
  Json out = Json::array();
  for (const auto& c : p.coords()) out.push_back(ScalarToJson(c));
  return out;
}

template <typename T>
ProjectivePoint<T> PointFromJson(const Json& j, bool affine_world) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, "point must be an array");
  Vec<T> v;
  for (const auto& c : j) v.push_back(ScalarFromJson<T>(c));
  if (affine_world && v.size() == 3) v.push_back(T(1));
  return ProjectivePoint<T>(std::move(v));
}

template <typename T>
Json TupleToJson(const ImageTuple<T>& tuple) {
  Json out = Json::array();
  for (const auto& p : tuple) out.push_back(PointToJson(p));
  return out;
}

template <typename T>
ImageTuple<T> TupleFromJson(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, "image tuple must be an array of 3-arrays");
  ImageTuple<T> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 3) throw Error(ErrorCode::kParse, "image points need 3 coordinates");
    out.push_back(PointFromJson<T>(p));
  }
  return out;
}

template <typename T>
Json RigToJson(const CameraRig<T>& rig) {
  Json cams = Json::array();
  for (const auto& m : rig.matrices()) {
    Json flat = Json::array();
    for (const auto& x : m.data()) flat.push_back(ScalarToJson(x));
    cams.push_back(flat);
  }
  Json violations = Json::array();
  for (const auto& v : rig.general_position().violations) violations.push_back(v.Describe());
  return Json{{"n", rig.size()},
              {"backend", ScalarTraits<T>::kName},
              {"cameras", cams},
              {"general_position", {{"ok", rig.general_position().ok()}, {"violations", violations}}}};
}

template <typename T>
CameraRig<T> RigFromJson(const Json& j) {
  const Json& cams = j.is_object() ? j.at("cameras") : j;
  if (!cams.is_array()) throw Error(ErrorCode::kParse, "rig needs an array of cameras");
  std::vector<Mat<T>> ms;
  for (const auto& c : cams) {
    if (c.is_array() && c.size() == 12 && !c[0].is_array()) {
      std::vector<T> entries;
      for (const auto& x : c) entries.push_back(ScalarFromJson<T>(x));
      ms.emplace_back(3, 4, std::move(entries));
    } else {
      ms.push_back(MatFromJson<T>(c));
    }
  }
  return CameraRig<T>(ms);
}

Json PolyToJson(const MultiHomogPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json exps = Json::array();
    for (auto x : e) exps.push_back(static_cast<int>(x));
    terms.push_back({{"exps", exps}, {"coef", c.get_str()}});
  }
  const auto d = p.degree();
  return Json{{"degree", d ? Json(*d) : Json::array()}, {"terms", terms}};
}

MultiHomogPoly PolyFromJson(const Json& j, int n) {
  MultiHomogPoly p(n);
  for (const auto& t : j.at("terms")) {
    MultiHomogPoly::Exponent e;
    for (const auto& x : t.at("exps")) e.push_back(static_cast<std::uint8_t>(x.get<int>()));
    p.AddTerm(e, ScalarFromJson<Rational>(t.at("coef")));
  }
  if (j.contains("degree") && !j["degree"].empty() && p.degree() &&
      j["degree"].get<MultiDegree>() != *p.degree()) {
    throw Error(ErrorCode::kMixedDegrees, "declared degree does not match the terms");
  }
  return p;
}

template <typename T>
Json SystemToJson(const ConstraintSystem<T>& system) {
  return Json{{"family", FamilyName(system.family())},
              {"n", system.rig().size()},
              {"size", system.size()},
              {"indices", system.indices()}};
}

template <typename T>
Json EvaluationToJson(const ConstraintSystem<T>& system, const Evaluation<T>& eval) {
  Json out = Json::array();
  for (std::size_t i = 0; i < eval.values.size(); ++i) {
    Json value = ScalarToJson(eval.values[i]);
    if constexpr (ScalarTraits<T>::kExact) value = eval.values[i].get_str();
    out.push_back({{"indices", system.indices()[i]}, {"value", value}});
  }
  return out;
}

Json CountsToJson(const DegreeClassCount& counts) {
  Json classes = Json::array();
  for (const auto& c : counts.classes) {
    classes.push_back({{"class", c.label},
                       {"total_degree", c.total_degree},
                       {"multiplicity", c.multiplicity},
                       {"classes", c.classes},
                       {"count", c.count()}});
  }
  Json by_degree = Json::object();
  for (const auto& [d, c] : counts.ByTotalDegree()) by_degree[std::to_string(d)] = c;
  return Json{{"n", counts.n},
              {"total", counts.total},
              {"class_sum", counts.class_sum},
              {"consistent", counts.consistent()},
              {"by_total_degree", by_degree},
              {"classes", classes}};
}

Json LoadJsonArgument(const std::string& text_or_path) {
  const Json inline_json = Json::parse(text_or_path, nullptr, false);
  if (!inline_json.is_discarded()) return inline_json;
  std::ifstream in(text_or_path);
  if (!in) throw Error(ErrorCode::kParse, "neither JSON nor a readable file: " + text_or_path);
  std::stringstream buf;
  buf << in.rdbuf();
  const Json parsed = Json::parse(buf.str(), nullptr, false);
  if (parsed.is_discarded()) throw Error(ErrorCode::kParse, "invalid JSON in " + text_or_path);
  return parsed;
}

#define RIGIDMV_INSTANTIATE(T)                                                    \
  template T ScalarFromJson<T>(const Json&);                                      \
  template Json MatToJson(const Mat<T>&);                                         \
  template Mat<T> MatFromJson<T>(const Json&);                                    \
  template Json PointToJson(const ProjectivePoint<T>&);                           \
  template ProjectivePoint<T> PointFromJson<T>(const Json&, bool);                \
  template Json TupleToJson(const ImageTuple<T>&);                                \
  template ImageTuple<T> TupleFromJson<T>(const Json&);                           \
  template Json RigToJson(const CameraRig<T>&);                                   \
  template CameraRig<T> RigFromJson<T>(const Json&);                              \
  template Json SystemToJson(const ConstraintSystem<T>&);                         \
  template Json EvaluationToJson(const ConstraintSystem<T>&, const Evaluation<T>&);

RIGIDMV_INSTANTIATE(Rational)
RIGIDMV_INSTANTIATE(double)

}  // namespace rigidmv
