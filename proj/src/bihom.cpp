#include "rigidmv/bihom.hpp"

#include <algorithm>
#include <cmath>

namespace rigidmv {
namespace {

int Degree(const WorldExponent& e) { return e[0] + e[1] + e[2] + e[3]; }

template <typename T>
T Monomial(std::span<const T> x, const WorldExponent& e) {
  T v(1);
  for (int i = 0; i < 4; ++i)
    for (int p = 0; p < e[i]; ++p) v *= x[i];
  return v;
}

WorldExponent Unit(int i, int power = 1) {
  WorldExponent e{0, 0, 0, 0};
  e[i] = static_cast<std::uint8_t>(power);
  return e;
}

WorldExponent Pair(int i, int j) {
  WorldExponent e{0, 0, 0, 0};
  ++e[i];
  ++e[j];
  return e;
}

}  // namespace

template <typename T>
BihomForm<T>::BihomForm(int d, int e) : d_(d), e_(e) {
  if (d < 0 || e < 0 || d + e == 0) {
    throw Error(ErrorCode::kWrongBidegree, "bidegree must be nonnegative and nonzero");
  }
}

template <typename T>
void BihomForm<T>::AddTerm(const WorldExponent& alpha, const WorldExponent& beta,
                           const T& coef) {
  if (Degree(alpha) != d_ || Degree(beta) != e_) {
    throw Error(ErrorCode::kWrongBidegree, "term does not match the bidegree");
  }
  const Key key{alpha, beta};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    if (coef != 0) terms_.emplace(key, coef);
    return;
  }
  it->second += coef;
  if (it->second == 0) terms_.erase(it);
}

template <typename T>
T BihomForm<T>::Eval(std::span<const T> x, std::span<const T> y) const {
  T s(0);
  for (const auto& [key, coef] : terms_)
    s += coef * Monomial(x, key.first) * Monomial(y, key.second);
  return s;
}

template <typename T>
double BihomForm<T>::MaxAbsCoefficient() const {
  double m = 0;
  for (const auto& [key, coef] : terms_)
    m = std::max(m, std::abs(ScalarTraits<T>::ToDouble(coef)));
  return m;
}

template <typename T>
BihomForm<T> ScaledDistanceQ(const T& distance) {
  if (ScalarTraits<T>::IsZero(distance, 0.0)) {
    throw Error(ErrorCode::kZeroDistance, "distance must be nonzero");
  }
  BihomForm<T> q(2, 2);
  for (int i = 0; i < 3; ++i) {
    // (X_i Y_3 - Y_i X_3)^2
    q.AddTerm(Unit(i, 2), Unit(3, 2), T(1));
    q.AddTerm(Pair(i, 3), Pair(i, 3), T(-2));
    q.AddTerm(Unit(3, 2), Unit(i, 2), T(1));
  }
  q.AddTerm(Unit(3, 2), Unit(3, 2), T(-(distance * distance)));
  return q;
}

template <typename T>
BihomForm<T> UnitDistanceQ() {
  return ScaledDistanceQ<T>(T(1));
}

template <typename T>
BihomForm<T> PairwiseQ(int i, int j, const T& distance) {
  if (i == j) throw Error(ErrorCode::kInvalidArgument, "pairwise distance needs i != j");
  return ScaledDistanceQ<T>(distance);
}

template <typename T>
QuadTensor<T>::QuadTensor() {
  entries_.fill(T(0));
}

template <typename T>
void QuadTensor<T>::Finalize() {
  nonzeros_.clear();
  for (int i = 0; i < 256; ++i)
    if (entries_[i] != 0) nonzeros_.push_back({i, entries_[i]});
}

template <typename T>
T QuadTensor<T>::Eval(std::span<const T> x1, std::span<const T> x2,
                      std::span<const T> y1, std::span<const T> y2) const {
  T s(0);
  for (const auto& e : nonzeros_) {
    const int a = e.index >> 6, b = (e.index >> 4) & 3, c = (e.index >> 2) & 3,
              d = e.index & 3;
    s += e.value * x1[a] * x2[b] * y1[c] * y2[d];
  }
  return s;
}

template <typename T>
std::array<T, 16> QuadTensor<T>::ContractY(std::span<const T> y1,
                                           std::span<const T> y2) const {
  std::array<T, 16> g;
  g.fill(T(0));
  for (const auto& e : nonzeros_) {
    const int c = (e.index >> 2) & 3, d = e.index & 3;
    g[e.index >> 4] += e.value * y1[c] * y2[d];
  }
  return g;
}

template <typename T>
double QuadTensor<T>::MaxAbsEntry() const {
  double m = 0;
  for (const auto& e : nonzeros_)
    m = std::max(m, std::abs(ScalarTraits<T>::ToDouble(e.value)));
  return m;
}

template <typename T>
QuadTensor<T> Polarize(const BihomForm<T>& q) {
  if (q.d() != 2 || q.e() != 2) {
    throw Error(ErrorCode::kWrongBidegree, "polarization needs bidegree (2,2)");
  }
  auto basis = [](int a) {
    Vec<T> v(4, T(0));
    v[a] = T(1);
    return v;
  };
  auto sum = [](const Vec<T>& a, const Vec<T>& b) {
    Vec<T> v(4);
    for (int i = 0; i < 4; ++i) v[i] = a[i] + b[i];
    return v;
  };
  const T half = T(1) / T(2);
  // Polarized in X, still quadratic in Y.
  auto bx = [&](const Vec<T>& x1, const Vec<T>& x2, const Vec<T>& y) {
    return T(half * (q.Eval(sum(x1, x2), y) - q.Eval(x1, y) - q.Eval(x2, y)));
  };
  QuadTensor<T> t;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          const Vec<T> ea = basis(a), eb = basis(b), ec = basis(c), ed = basis(d);
          t.entries_[((a * 4 + b) * 4 + c) * 4 + d] =
              half * (bx(ea, eb, sum(ec, ed)) - bx(ea, eb, ec) - bx(ea, eb, ed));
        }
  t.Finalize();
  return t;
}

#define RIGIDMV_INSTANTIATE(T)                                 \
  template class BihomForm<T>;                                 \
  template class QuadTensor<T>;                                \
  template BihomForm<T> UnitDistanceQ<T>();                    \
  template BihomForm<T> ScaledDistanceQ<T>(const T&);          \
  template BihomForm<T> PairwiseQ<T>(int, int, const T&);      \
  template QuadTensor<T> Polarize<T>(const BihomForm<T>&);

RIGIDMV_INSTANTIATE(Rational)
RIGIDMV_INSTANTIATE(double)

}  // namespace rigidmv
