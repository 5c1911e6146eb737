#pragma once

#include <string>

#include "json.hpp"
#include "rigidmv/constraints.hpp"
#include "rigidmv/polyspace.hpp"

namespace rigidmv {

using Json = nlohmann::ordered_json;

/// Rationals as "p/q" (or "p") strings, doubles as numbers.
Json ScalarToJson(const Rational& x);
Json ScalarToJson(double x);
/// Accepts numbers and strings ("3", "-1/2", "0.25") for either backend.
template <typename T>
T ScalarFromJson(const Json& j);

template <typename T>
Json MatToJson(const Mat<T>& m);
template <typename T>
Mat<T> MatFromJson(const Json& j);

template <typename T>
Json PointToJson(const ProjectivePoint<T>& p);
/// A 3-array is taken as affine (x, y, z, 1) when `affine_world` is set.
template <typename T>
ProjectivePoint<T> PointFromJson(const Json& j, bool affine_world = false);

template <typename T>
Json TupleToJson(const ImageTuple<T>& tuple);
template <typename T>
ImageTuple<T> TupleFromJson(const Json& j);

/// {"n", "backend", "cameras": [[12 row-major entries], ...],
/// "general_position": {...}}.
template <typename T>
Json RigToJson(const CameraRig<T>& rig);
/// Accepts the object above or a bare camera array; each camera may be 12
/// row-major entries or 3 rows of 4.
template <typename T>
CameraRig<T> RigFromJson(const Json& j);

/// {"degree": [...], "terms": [{"exps": [...], "coef": "p/q"}, ...]}.
Json PolyToJson(const MultiHomogPoly& p);
MultiHomogPoly PolyFromJson(const Json& j, int n);

/// {"family", "n", "size", "indices": [[...], ...]}.
template <typename T>
Json SystemToJson(const ConstraintSystem<T>& system);
/// [{"indices": [...], "value": v}, ...] with exact zeros written as "0".
template <typename T>
Json EvaluationToJson(const ConstraintSystem<T>& system, const Evaluation<T>& eval);

Json CountsToJson(const DegreeClassCount& counts);

/// Parses inline JSON text, or reads and parses the file it names.
Json LoadJsonArgument(const std::string& text_or_path);

}  // namespace rigidmv
