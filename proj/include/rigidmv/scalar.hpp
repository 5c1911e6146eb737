#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>

namespace rigidmv {

/// Exact arbitrary-precision rational. The float backend uses plain `double`.
using Rational = mpq_class;

/// Float-backend thresholds. The exact backend ignores all of these.
struct Tolerances {
  /// Singular values below rank * largest count as zero.
  double rank = 1e-9;
  /// Relative magnitude below which a vector counts as the zero vector.
  double zero = 1e-12;
  /// Angular distance allowed between two triangulation candidates.
  double angle = 1e-6;
  /// Scale-normalized evaluator residual counted as vanishing.
  double residual = 1e-7;
};

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool kExact = true;
  static constexpr const char* kName = "exact";

  static bool IsZero(const Rational& x, double /*tol*/ = 0.0) {
    return sgn(x) == 0;
  }
  static double ToDouble(const Rational& x) { return x.get_d(); }
  static Rational FromInt(long v) { return Rational(v); }
  static Rational FromDouble(double v) { return Rational(v); }
  static Rational Abs(const Rational& x) { return Rational(abs(x)); }
  static std::string ToString(const Rational& x) { return x.get_str(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;
  static constexpr const char* kName = "float";

  static bool IsZero(double x, double tol) { return std::abs(x) <= tol; }
  static double ToDouble(double x) { return x; }
  static double FromInt(long v) { return static_cast<double>(v); }
  static double FromDouble(double v) { return v; }
  static double Abs(double x) { return std::abs(x); }
  static std::string ToString(double x);
};

/// Parses "p", "p/q" or a decimal literal ("0.25") into an exact rational.
Rational ParseRational(const std::string& text);

/// Exact square root of a nonnegative rational when it is a perfect square.
bool RationalSqrt(const Rational& x, Rational* root);

}  // namespace rigidmv
