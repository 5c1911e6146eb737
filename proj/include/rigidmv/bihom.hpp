#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "rigidmv/matrix.hpp"

namespace rigidmv {

using WorldExponent = std::array<std::uint8_t, 4>;

/// Polynomial in two world points X, Y in P^3, homogeneous of degree d in X
/// and e in Y. Zero coefficients are never stored.
template <typename T>
class BihomForm {
 public:
  using Key = std::pair<WorldExponent, WorldExponent>;

  BihomForm(int d, int e);

  int d() const { return d_; }
  int e() const { return e_; }
  const std::map<Key, T>& terms() const { return terms_; }

  /// Adds coef * X^alpha Y^beta. Throws kWrongBidegree on a degree mismatch.
  void AddTerm(const WorldExponent& alpha, const WorldExponent& beta,
               const T& coef);

  T Eval(std::span<const T> x, std::span<const T> y) const;

  /// Largest coefficient magnitude (float scale normalization).
  double MaxAbsCoefficient() const;

 private:
  int d_;
  int e_;
  std::map<Key, T> terms_;
};

/// (X0Y3 - Y0X3)^2 + (X1Y3 - Y1X3)^2 + (X2Y3 - Y2X3)^2 - X3^2 Y3^2.
template <typename T>
BihomForm<T> UnitDistanceQ();

/// Same with final coefficient -d^2. Throws kZeroDistance for d = 0.
template <typename T>
BihomForm<T> ScaledDistanceQ(const T& distance);

/// Distance constraint between world points i and j; identical to
/// ScaledDistanceQ(d_ij) in the variables (X_i, X_j).
template <typename T>
BihomForm<T> PairwiseQ(int i, int j, const T& distance);

/// Order-4 tensor on (R^4)^{x4}, symmetric in slots (1,2) and (3,4).
template <typename T>
class QuadTensor {
 public:
  QuadTensor();

  const T& at(int a, int b, int c, int d) const {
    return entries_[((a * 4 + b) * 4 + c) * 4 + d];
  }

  T Eval(std::span<const T> x1, std::span<const T> x2, std::span<const T> y1,
         std::span<const T> y2) const;

  /// Contracts the last two slots: G(a,b) = sum_cd T(a,b,c,d) y1_c y2_d.
  std::array<T, 16> ContractY(std::span<const T> y1,
                              std::span<const T> y2) const;

  double MaxAbsEntry() const;

  struct Entry {
    int index;  // ((a*4+b)*4+c)*4+d
    T value;
  };
  const std::vector<Entry>& nonzeros() const { return nonzeros_; }

 private:
  template <typename U>
  friend QuadTensor<U> Polarize(const BihomForm<U>& q);

  void Finalize();

  std::array<T, 256> entries_;
  std::vector<Entry> nonzeros_;
};

/// The unique slot-symmetric multilinear T with T(X,X,Y,Y) = Q(X,Y),
/// obtained by polarizing the X pair then the Y pair with
/// b(x,x') = (q(x+x') - q(x) - q(x')) / 2. Throws kWrongBidegree unless
/// q has bidegree (2,2).
template <typename T>
QuadTensor<T> Polarize(const BihomForm<T>& q);

}  // namespace rigidmv
