#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rigidmv/scalar.hpp"

namespace rigidmv {

/// Degrees in the blocks u_1..u_n, v_1..v_n (length 2n).
using MultiDegree = std::vector<int>;

/// "(2,2,0,2,2,0)" style label.
std::string DegreeLabel(const MultiDegree& degree);

/// Sparse polynomial over Q in the 6n image variables. Variable 3i + c is
/// u_{i,c} and 3n + 3i + c is v_{i,c} (0-based camera i, coordinate c).
/// All terms share one multidegree; zero coefficients are never stored.
class MultiHomogPoly {
 public:
  using Exponent = std::vector<std::uint8_t>;

  explicit MultiHomogPoly(int n = 0) : n_(n) {}

  static MultiHomogPoly Constant(int n, const Rational& c);
  /// side 0 = u, 1 = v.
  static MultiHomogPoly Variable(int n, int side, int camera, int coord);
  static int VariableIndex(int n, int side, int camera, int coord) {
    return 3 * n * side + 3 * camera + coord;
  }

  int n() const { return n_; }
  int num_variables() const { return 6 * n_; }
  bool IsZero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }
  const std::map<Exponent, Rational>& terms() const { return terms_; }

  /// Empty for the zero polynomial.
  std::optional<MultiDegree> degree() const;

  /// Throws kMixedDegrees when the term's multidegree differs.
  void AddTerm(const Exponent& exponent, const Rational& coef);
  /// Coefficient of a monomial (0 when absent).
  Rational Coefficient(const Exponent& exponent) const;

  MultiHomogPoly& operator+=(const MultiHomogPoly& other);
  MultiHomogPoly& operator-=(const MultiHomogPoly& other);
  MultiHomogPoly operator+(const MultiHomogPoly& other) const;
  MultiHomogPoly operator-(const MultiHomogPoly& other) const;
  MultiHomogPoly operator*(const MultiHomogPoly& other) const;
  MultiHomogPoly operator*(const Rational& s) const;
  bool operator==(const MultiHomogPoly& other) const = default;

  /// values has one entry per variable.
  Rational Eval(const std::vector<Rational>& values) const;

 private:
  MultiDegree DegreeOf(const Exponent& e) const;
  void Accumulate(const Exponent& exponent, const Rational& coef);
  void CheckCompatible(const MultiHomogPoly& other) const;

  int n_;
  std::map<Exponent, Rational> terms_;
};

/// All monomials of a multidegree: graded lexicographic inside each
/// 3-variable block, blocks in camera order with u before v.
std::vector<MultiHomogPoly::Exponent> MonomialBasis(int n, const MultiDegree& degree);

}  // namespace rigidmv
