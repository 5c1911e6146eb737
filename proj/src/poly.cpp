#include "rigidmv/poly.hpp"

#include <array>
#include <functional>

#include "rigidmv/error.hpp"

namespace rigidmv {

std::string DegreeLabel(const MultiDegree& degree) {
  std::string s = "(";
  for (std::size_t i = 0; i < degree.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(degree[i]);
  }
  return s + ")";
}

MultiHomogPoly MultiHomogPoly::Constant(int n, const Rational& c) {
  MultiHomogPoly p(n);
  p.AddTerm(Exponent(6 * n, 0), c);
  return p;
}

MultiHomogPoly MultiHomogPoly::Variable(int n, int side, int camera, int coord) {
  if (side < 0 || side > 1 || camera < 0 || camera >= n || coord < 0 || coord > 2) {
    throw Error(ErrorCode::kIndexOutOfRange, "variable index out of range");
  }
  MultiHomogPoly p(n);
  Exponent e(6 * n, 0);
  e[VariableIndex(n, side, camera, coord)] = 1;
  p.AddTerm(e, Rational(1));
  return p;
}

MultiDegree MultiHomogPoly::DegreeOf(const Exponent& e) const {
  MultiDegree d(2 * n_, 0);
  for (int v = 0; v < 6 * n_; ++v) d[v / 3] += e[v];
  return d;
}

std::optional<MultiDegree> MultiHomogPoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  return DegreeOf(terms_.begin()->first);
}

void MultiHomogPoly::AddTerm(const Exponent& exponent, const Rational& coef) {
  if (static_cast<int>(exponent.size()) != 6 * n_) {
    throw Error(ErrorCode::kShapeMismatch, "exponent length must be 6n");
  }
  if (coef == 0) return;
  if (!terms_.empty() && DegreeOf(exponent) != DegreeOf(terms_.begin()->first)) {
    throw Error(ErrorCode::kMixedDegrees, "term multidegree differs from polynomial");
  }
  Accumulate(exponent, coef);
}

void MultiHomogPoly::Accumulate(const Exponent& exponent, const Rational& coef) {
  if (coef == 0) return;
  auto [it, inserted] = terms_.emplace(exponent, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational MultiHomogPoly::Coefficient(const Exponent& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiHomogPoly::CheckCompatible(const MultiHomogPoly& other) const {
  if (other.n_ != n_) throw Error(ErrorCode::kShapeMismatch, "camera counts differ");
  if (!terms_.empty() && !other.terms_.empty() && degree() != other.degree()) {
    throw Error(ErrorCode::kMixedDegrees, "cannot add polynomials of different multidegree");
  }
}

MultiHomogPoly& MultiHomogPoly::operator+=(const MultiHomogPoly& other) {
  CheckCompatible(other);
  for (const auto& [e, c] : other.terms_) Accumulate(e, c);
  return *this;
}

MultiHomogPoly& MultiHomogPoly::operator-=(const MultiHomogPoly& other) {
  CheckCompatible(other);
  for (const auto& [e, c] : other.terms_) Accumulate(e, Rational(-c));
  return *this;
}

MultiHomogPoly MultiHomogPoly::operator+(const MultiHomogPoly& other) const {
  MultiHomogPoly r = *this;
  r += other;
  return r;
}

MultiHomogPoly MultiHomogPoly::operator-(const MultiHomogPoly& other) const {
  MultiHomogPoly r = *this;
  r -= other;
  return r;
}

MultiHomogPoly MultiHomogPoly::operator*(const MultiHomogPoly& other) const {
  if (other.n_ != n_) throw Error(ErrorCode::kShapeMismatch, "camera counts differ");
  MultiHomogPoly r(n_);
  Exponent e(6 * n_);
  Rational c;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : other.terms_) {
      for (int v = 0; v < 6 * n_; ++v) e[v] = ea[v] + eb[v];
      c = ca * cb;
      r.Accumulate(e, c);
    }
  return r;
}

MultiHomogPoly MultiHomogPoly::operator*(const Rational& s) const {
  MultiHomogPoly r(n_);
  if (s == 0) return r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
  return r;
}

Rational MultiHomogPoly::Eval(const std::vector<Rational>& values) const {
  if (static_cast<int>(values.size()) != 6 * n_) {
    throw Error(ErrorCode::kShapeMismatch, "need one value per variable");
  }
  Rational s(0);
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (int v = 0; v < 6 * n_; ++v)
      for (int p = 0; p < e[v]; ++p) m *= values[v];
    s += m;
  }
  return s;
}

std::vector<MultiHomogPoly::Exponent> MonomialBasis(int n, const MultiDegree& degree) {
  if (static_cast<int>(degree.size()) != 2 * n) {
    throw Error(ErrorCode::kShapeMismatch, "multidegree length must be 2n");
  }
  // Block monomials of degree d in grlex: x0^d first.
  auto block = [](int d) {
    std::vector<std::array<std::uint8_t, 3>> out;
    for (int a = d; a >= 0; --a)
      for (int b = d - a; b >= 0; --b)
        out.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                       static_cast<std::uint8_t>(d - a - b)});
    return out;
  };
  std::vector<MultiHomogPoly::Exponent> result;
  MultiHomogPoly::Exponent current(6 * n, 0);
  std::function<void(int)> recurse = [&](int b) {
    if (b == 2 * n) {
      result.push_back(current);
      return;
    }
    if (degree[b] < 0) throw Error(ErrorCode::kInvalidArgument, "negative degree");
    for (const auto& m : block(degree[b])) {
      for (int c = 0; c < 3; ++c) current[3 * b + c] = m[c];
      recurse(b + 1);
    }
  };
  recurse(0);
  return result;
}

}  // namespace rigidmv
