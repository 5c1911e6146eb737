#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rigidmv/bihom.hpp"
#include "rigidmv/camera.hpp"
#include "rigidmv/constraints.hpp"
#include "rigidmv/poly.hpp"

namespace rigidmv {

/// The four coordinates of Wedge5Tilde(B^{jk} without row), as bilinear
/// forms in the image variables of cameras j and k on the given side
/// (0 = u, 1 = v).
std::array<MultiHomogPoly, 4> ExpandWedge5Symbolic(const CameraRig<Rational>& rig,
                                                   int j, int k, int row, int side = 0);

/// T(w_{i1}, w_{i2}, c_{i3}, c_{i4}) as a polynomial in (u, v).
MultiHomogPoly ExpandOcticSymbolic(const CameraRig<Rational>& rig,
                                   const QuadTensor<Rational>& tensor,
                                   const WedgeChoice& u_side, const WedgeChoice& v_side);

/// Every octic of OCTIC_FULL in its enumeration order.
std::vector<MultiHomogPoly> ExpandAllOctics(const CameraRig<Rational>& rig,
                                            const QuadTensor<Rational>& tensor);

/// det B^{jk} as a bilinear form on one side.
MultiHomogPoly BilinearGenerator(const CameraRig<Rational>& rig, int j, int k, int side);

/// Bilinear generator times every monomial of complementary degree, for
/// both sides. Only n = 2 is supported (kUnsupported otherwise).
std::vector<MultiHomogPoly> IdealComponentBasis(const CameraRig<Rational>& rig,
                                                const MultiDegree& target);

enum class RankMethod { kModular, kExact };

struct SpanOptions {
  RankMethod method = RankMethod::kModular;
  std::uint64_t seed = 0;
};

struct SpanReport {
  int rank = 0;
  /// Primes used by the modular method (two, or three on disagreement).
  std::vector<std::uint64_t> primes;
  std::vector<int> ranks_per_prime;
  std::size_t rows = 0;
  std::size_t columns = 0;
};

/// Rank of the coefficient matrix in the monomial basis of the common
/// multidegree. Throws kMixedDegrees. Zero polynomials contribute nothing.
SpanReport SpanDimension(const std::vector<MultiHomogPoly>& polys,
                         const SpanOptions& options = {});

/// dim span(base u extra) and dim span(base), sharing one elimination.
struct QuotientReport {
  int base_rank = 0;
  int combined_rank = 0;
  int quotient() const { return combined_rank - base_rank; }
  std::vector<std::uint64_t> primes;
};
QuotientReport QuotientDimension(const std::vector<MultiHomogPoly>& base,
                                 const std::vector<MultiHomogPoly>& extra,
                                 const SpanOptions& options = {});

/// Deterministic Miller-Rabin for 64-bit inputs below 2^32.
bool IsPrime32(std::uint64_t p);
/// Uniform random prime in [2^30, 2^31).
std::uint64_t RandomPrime31(std::uint64_t seed);

/// Incremental echelon form over Z/p.
class ModularEchelon {
 public:
  ModularEchelon(std::size_t columns, std::uint64_t prime);
  /// Reduces the row against the basis; returns true when it was
  /// independent (and appends it).
  bool Insert(std::vector<std::uint64_t> row);
  int rank() const { return static_cast<int>(pivots_.size()); }
  std::uint64_t prime() const { return p_; }
  /// Reduces q mod p; returns false when p divides the denominator.
  static bool Reduce(const Rational& q, std::uint64_t p, std::uint64_t* out);

 private:
  std::size_t columns_;
  std::uint64_t p_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<std::uint64_t>> rows_;  // sorted by pivot column
};

struct ClassCount {
  std::string label;        // e.g. "(220..220..)"
  int total_degree = 0;
  long long multiplicity = 0;
  long long classes = 0;
  long long count() const { return multiplicity * classes; }
};

struct DegreeClassCount {
  int n = 0;
  std::vector<ClassCount> classes;
  long long total = 0;       // from the sextic polynomial
  long long class_sum = 0;   // sum over classes
  bool consistent() const { return total == class_sum; }
  /// Counts keyed by total degree, ascending.
  std::vector<std::pair<int, long long>> ByTotalDegree() const;
};

/// Conjectured minimal generator counts for n cameras. Throws
/// kInvalidArgument for n < 2.
DegreeClassCount ConjectureGeneratorCount(int n);

long long Binomial(long long n, long long k);

}  // namespace rigidmv
