#include "rigidmv/polyspace.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "rigidmv/linalg.hpp"

namespace rigidmv {
namespace {

using Exponent = MultiHomogPoly::Exponent;

std::uint64_t MulMod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a * b % p;  // operands below 2^32
}

std::uint64_t PowMod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = MulMod(r, a, p);
    a = MulMod(a, a, p);
    e >>= 1;
  }
  return r;
}

Vec<Rational> UnitVector(int a) {
  Vec<Rational> e(3, Rational(0));
  e[a] = 1;
  return e;
}

MultiDegree CommonDegree(const std::vector<const MultiHomogPoly*>& polys, bool* any) {
  *any = false;
  MultiDegree degree;
  for (const auto* p : polys) {
    const auto d = p->degree();
    if (!d) continue;
    if (!*any) {
      degree = *d;
      *any = true;
    } else if (*d != degree) {
      throw Error(ErrorCode::kMixedDegrees,
                  "span needs one multidegree, got " + DegreeLabel(degree) + " and " +
                      DegreeLabel(*d));
    }
  }
  return degree;
}

// Column index of every monomial of the common multidegree.
struct Basis {
  std::map<Exponent, std::size_t> column;
  std::size_t size() const { return column.size(); }
};

Basis MakeBasis(int n, const MultiDegree& degree) {
  Basis b;
  for (const auto& e : MonomialBasis(n, degree)) b.column.emplace(e, b.column.size());
  return b;
}

// Rows of the polynomials mod p; empty optional when p divides a denominator.
std::optional<std::vector<std::vector<std::uint64_t>>> ModularRows(
    const std::vector<const MultiHomogPoly*>& polys, const Basis& basis, std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(polys.size());
  for (const auto* poly : polys) {
    std::vector<std::uint64_t> row(basis.size(), 0);
    for (const auto& [e, c] : poly->terms()) {
      if (!ModularEchelon::Reduce(c, p, &row[basis.column.at(e)])) return std::nullopt;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// Ranks after inserting each group in turn, over one prime.
std::optional<std::vector<int>> GroupRanksModP(
    const std::vector<std::vector<const MultiHomogPoly*>>& groups, const Basis& basis,
    std::uint64_t p) {
  ModularEchelon echelon(basis.size(), p);
  std::vector<int> ranks;
  for (const auto& group : groups) {
    auto rows = ModularRows(group, basis, p);
    if (!rows) return std::nullopt;
    for (auto& row : *rows) echelon.Insert(std::move(row));
    ranks.push_back(echelon.rank());
  }
  return ranks;
}

std::vector<int> GroupRanksExact(
    const std::vector<std::vector<const MultiHomogPoly*>>& groups, const Basis& basis) {
  std::vector<int> ranks;
  std::vector<const MultiHomogPoly*> all;
  for (const auto& group : groups) {
    all.insert(all.end(), group.begin(), group.end());
    Mat<Rational> m(all.size(), basis.size());
    for (std::size_t r = 0; r < all.size(); ++r)
      for (const auto& [e, c] : all[r]->terms()) m(r, basis.column.at(e)) = c;
    ranks.push_back(all.empty() ? 0 : Rank(m).rank);
  }
  return ranks;
}

struct GroupRanks {
  std::vector<int> ranks;
  std::vector<std::uint64_t> primes;
  std::vector<int> final_rank_per_prime;
};

// Mod-p ranks never exceed the rational rank, so the elementwise maximum
// over primes is the best lower bound. A third prime is drawn when the
// first two disagree.
GroupRanks ComputeGroupRanks(const std::vector<std::vector<const MultiHomogPoly*>>& groups,
                             int n, const SpanOptions& options) {
  std::vector<const MultiHomogPoly*> flat;
  for (const auto& g : groups) flat.insert(flat.end(), g.begin(), g.end());
  bool any = false;
  const MultiDegree degree = CommonDegree(flat, &any);
  GroupRanks out;
  if (!any) {
    out.ranks.assign(groups.size(), 0);
    return out;
  }
  const Basis basis = MakeBasis(n, degree);
  if (options.method == RankMethod::kExact) {
    out.ranks = GroupRanksExact(groups, basis);
    return out;
  }
  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::vector<int>> per_prime;
  for (int attempt = 0; attempt < 16; ++attempt) {
    const std::uint64_t p = RandomPrime31(rng());
    if (std::find(out.primes.begin(), out.primes.end(), p) != out.primes.end()) continue;
    auto ranks = GroupRanksModP(groups, basis, p);
    if (!ranks) continue;
    out.primes.push_back(p);
    per_prime.push_back(*ranks);
    out.final_rank_per_prime.push_back(ranks->back());
    if (per_prime.size() == 2 && per_prime[0] == per_prime[1]) break;
    if (per_prime.size() == 3) break;
  }
  if (per_prime.empty()) throw Error(ErrorCode::kExhausted, "no usable prime found");
  out.ranks.assign(groups.size(), 0);
  for (const auto& r : per_prime)
    for (std::size_t g = 0; g < r.size(); ++g) out.ranks[g] = std::max(out.ranks[g], r[g]);
  return out;
}

}  // namespace

bool IsPrime32(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 61}) {
    if (p == small) return true;
    if (p % small == 0) return false;
  }
  std::uint64_t d = p - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 7, 61}) {
    std::uint64_t x = PowMod(a, d, p);
    if (x == 1 || x == p - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = MulMod(x, x, p);
      if (x == p - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t RandomPrime31(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::uint64_t lo = 1ULL << 30;
  while (true) {
    const std::uint64_t candidate = (lo + (rng() & (lo - 1))) | 1ULL;
    if (IsPrime32(candidate)) return candidate;
  }
}

ModularEchelon::ModularEchelon(std::size_t columns, std::uint64_t prime)
    : columns_(columns), p_(prime) {}

bool ModularEchelon::Reduce(const Rational& q, std::uint64_t p, std::uint64_t* out) {
  const std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
  if (den == 0) return false;
  const std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
  *out = MulMod(num, PowMod(den, p - 2, p), p);
  return true;
}

bool ModularEchelon::Insert(std::vector<std::uint64_t> row) {
  if (row.size() != columns_) throw Error(ErrorCode::kShapeMismatch, "row length mismatch");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t c0 = pivots_[i];
    const std::uint64_t f = row[c0];
    if (f == 0) continue;
    const std::uint64_t neg = p_ - f;
    const auto& pivot_row = rows_[i];
    for (std::size_t c = c0; c < columns_; ++c) {
      if (pivot_row[c] != 0) row[c] = (row[c] + neg * pivot_row[c]) % p_;
    }
  }
  std::size_t lead = 0;
  while (lead < columns_ && row[lead] == 0) ++lead;
  if (lead == columns_) return false;
  const std::uint64_t inv = PowMod(row[lead], p_ - 2, p_);
  for (std::size_t c = lead; c < columns_; ++c) row[c] = MulMod(row[c], inv, p_);
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, lead);
  rows_.insert(rows_.begin() + pos, std::move(row));
  return true;
}

std::array<MultiHomogPoly, 4> ExpandWedge5Symbolic(const CameraRig<Rational>& rig, int j,
                                                   int k, int row, int side) {
  if (j < 0 || k < 0 || j >= rig.size() || k >= rig.size() || j == k) {
    throw Error(ErrorCode::kIndexOutOfRange, "invalid camera pair");
  }
  if (row < 0 || row >= 6) throw Error(ErrorCode::kIndexOutOfRange, "row index must be 0..5");
  const int n = rig.size();
  std::array<MultiHomogPoly, 4> out;
  out.fill(MultiHomogPoly(n));
  // The wedge is bilinear in (u_j, u_k): read off each coefficient by
  // substituting unit vectors.
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const Vec<Rational> ea = UnitVector(a), eb = UnitVector(b);
      const Mat<Rational> m =
          PairMatrix<Rational>(rig.camera(j).matrix(), rig.camera(k).matrix(), ea, eb);
      const Vec<Rational> w = SignedMaximalMinors(m.WithoutRow(row));
      Exponent e(6 * n, 0);
      e[MultiHomogPoly::VariableIndex(n, side, j, a)] = 1;
      e[MultiHomogPoly::VariableIndex(n, side, k, b)] = 1;
      for (int c = 0; c < 4; ++c) out[c].AddTerm(e, w[c]);
    }
  }
  return out;
}

namespace {

// S(c,d) = sum_ab T(a,b,c,d) w1_a w2_b for the u side.
std::array<MultiHomogPoly, 16> ContractU(const QuadTensor<Rational>& tensor,
                                         const std::array<MultiHomogPoly, 4>& w1,
                                         const std::array<MultiHomogPoly, 4>& w2, int n) {
  std::array<MultiHomogPoly, 16> products;
  products.fill(MultiHomogPoly(n));
  std::array<bool, 16> have{};
  std::array<MultiHomogPoly, 16> s = products;
  for (const auto& entry : tensor.nonzeros()) {
    const int ab = entry.index >> 4, cd = entry.index & 15;
    if (!have[ab]) {
      products[ab] = w1[ab >> 2] * w2[ab & 3];
      have[ab] = true;
    }
    s[cd] += products[ab] * entry.value;
  }
  return s;
}

std::array<MultiHomogPoly, 16> OuterV(const std::array<MultiHomogPoly, 4>& c1,
                                      const std::array<MultiHomogPoly, 4>& c2, int n) {
  std::array<MultiHomogPoly, 16> out;
  out.fill(MultiHomogPoly(n));
  for (int c = 0; c < 4; ++c)
    for (int d = 0; d < 4; ++d) out[c * 4 + d] = c1[c] * c2[d];
  return out;
}

MultiHomogPoly Pair(const std::array<MultiHomogPoly, 16>& s,
                    const std::array<MultiHomogPoly, 16>& pv, int n) {
  MultiHomogPoly r(n);
  for (int cd = 0; cd < 16; ++cd)
    if (!s[cd].IsZero() && !pv[cd].IsZero()) r += s[cd] * pv[cd];
  return r;
}

}  // namespace

MultiHomogPoly ExpandOcticSymbolic(const CameraRig<Rational>& rig,
                                   const QuadTensor<Rational>& tensor,
                                   const WedgeChoice& u_side, const WedgeChoice& v_side) {
  const int n = rig.size();
  const auto w1 = ExpandWedge5Symbolic(rig, u_side.j, u_side.k, u_side.row_a, 0);
  const auto w2 = ExpandWedge5Symbolic(rig, u_side.j, u_side.k, u_side.row_b, 0);
  const auto c1 = ExpandWedge5Symbolic(rig, v_side.j, v_side.k, v_side.row_a, 1);
  const auto c2 = ExpandWedge5Symbolic(rig, v_side.j, v_side.k, v_side.row_b, 1);
  return Pair(ContractU(tensor, w1, w2, n), OuterV(c1, c2, n), n);
}

std::vector<MultiHomogPoly> ExpandAllOctics(const CameraRig<Rational>& rig,
                                            const QuadTensor<Rational>& tensor) {
  const int n = rig.size();
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) pairs.emplace_back(j, k);

  std::map<std::pair<int, int>, std::array<std::array<MultiHomogPoly, 4>, 6>> wu, wv;
  auto wedges = [&](auto& cache, std::pair<int, int> p, int side) -> const auto& {
    auto it = cache.find(p);
    if (it == cache.end()) {
      std::array<std::array<MultiHomogPoly, 4>, 6> all;
      for (int r = 0; r < 6; ++r) all[r] = ExpandWedge5Symbolic(rig, p.first, p.second, r, side);
      it = cache.emplace(p, std::move(all)).first;
    }
    return it->second;
  };
  // Contracted u sides and outer-product v sides, each computed once.
  std::map<std::tuple<int, int, int>, std::array<MultiHomogPoly, 16>> su, pv;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& u = wedges(wu, pairs[p], 0);
    const auto& v = wedges(wv, pairs[p], 1);
    for (int i1 = 0; i1 < 6; ++i1)
      for (int i2 = i1; i2 < 6; ++i2) {
        su.emplace(std::make_tuple(static_cast<int>(p), i1, i2), ContractU(tensor, u[i1], u[i2], n));
        pv.emplace(std::make_tuple(static_cast<int>(p), i1, i2), OuterV(v[i1], v[i2], n));
      }
  }
  std::vector<MultiHomogPoly> out;
  out.reserve(pairs.size() * pairs.size() * 441);
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (std::size_t q = 0; q < pairs.size(); ++q)
      for (int i1 = 0; i1 < 6; ++i1)
        for (int i2 = i1; i2 < 6; ++i2)
          for (int i3 = 0; i3 < 6; ++i3)
            for (int i4 = i3; i4 < 6; ++i4)
              out.push_back(Pair(su.at({static_cast<int>(p), i1, i2}),
                                 pv.at({static_cast<int>(q), i3, i4}), n));
  return out;
}

MultiHomogPoly BilinearGenerator(const CameraRig<Rational>& rig, int j, int k, int side) {
  const int n = rig.size();
  const Mat<Rational>& f = rig.Fundamental(j, k);
  MultiHomogPoly g(n);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Exponent e(6 * n, 0);
      e[MultiHomogPoly::VariableIndex(n, side, j, a)] = 1;
      e[MultiHomogPoly::VariableIndex(n, side, k, b)] = 1;
      g.AddTerm(e, f(a, b));
    }
  return g;
}

std::vector<MultiHomogPoly> IdealComponentBasis(const CameraRig<Rational>& rig,
                                                const MultiDegree& target) {
  const int n = rig.size();
  if (n != 2) {
    throw Error(ErrorCode::kUnsupported,
                "ideal component needs trilinear generators for n > 2");
  }
  if (target.size() != 4) throw Error(ErrorCode::kShapeMismatch, "target must have length 4");
  std::vector<MultiHomogPoly> out;
  for (int side = 0; side < 2; ++side) {
    MultiDegree rest = target;
    rest[2 * side] -= 1;
    rest[2 * side + 1] -= 1;
    if (*std::min_element(rest.begin(), rest.end()) < 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "target degree is below the generator degree");
    }
    const MultiHomogPoly g = BilinearGenerator(rig, 0, 1, side);
    for (const auto& e : MonomialBasis(n, rest)) {
      MultiHomogPoly m(n);
      m.AddTerm(e, Rational(1));
      out.push_back(g * m);
    }
  }
  return out;
}

SpanReport SpanDimension(const std::vector<MultiHomogPoly>& polys, const SpanOptions& options) {
  SpanReport report;
  report.rows = polys.size();
  if (polys.empty()) return report;
  std::vector<const MultiHomogPoly*> ptrs;
  for (const auto& p : polys) ptrs.push_back(&p);
  const int n = polys.front().n();
  const auto ranks = ComputeGroupRanks({ptrs}, n, options);
  report.rank = ranks.ranks.front();
  report.primes = ranks.primes;
  report.ranks_per_prime = ranks.final_rank_per_prime;
  bool any = false;
  const auto degree = CommonDegree(ptrs, &any);
  report.columns = any ? MonomialBasis(n, degree).size() : 0;
  return report;
}

QuotientReport QuotientDimension(const std::vector<MultiHomogPoly>& base,
                                 const std::vector<MultiHomogPoly>& extra,
                                 const SpanOptions& options) {
  QuotientReport report;
  std::vector<const MultiHomogPoly*> b, x;
  for (const auto& p : base) b.push_back(&p);
  for (const auto& p : extra) x.push_back(&p);
  if (b.empty() && x.empty()) return report;
  const int n = (b.empty() ? x.front() : b.front())->n();
  const auto ranks = ComputeGroupRanks({b, x}, n, options);
  report.base_rank = ranks.ranks[0];
  report.combined_rank = ranks.ranks[1];
  report.primes = ranks.primes;
  return report;
}

long long Binomial(long long n, long long k) {
  if (k < 0 || n < k) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::pair<int, long long>> DegreeClassCount::ByTotalDegree() const {
  std::map<int, long long> by;
  for (const auto& c : classes) by[c.total_degree] += c.count();
  return {by.begin(), by.end()};
}

DegreeClassCount ConjectureGeneratorCount(int n) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "generator counts need n >= 2");
  const long long m = n;
  const long long c2 = Binomial(m, 2), c3 = Binomial(m, 3), d2 = Binomial(m - 1, 2);
  DegreeClassCount out;
  out.n = n;
  out.classes = {
      {"(110..000..)", 2, 1, 2 * c2},
      {"(220..220..)", 8, 9, c2 * c2},
      {"(111..000..)", 3, 1, 2 * c3},
      {"(220..211..)", 8, 3, 2 * m * c2 * d2},
      {"(220..111..)", 7, 3, 2 * c2 * c3},
      {"(211..211..)", 8, 1, m * m * d2 * d2},
      {"(211..111..)", 7, 1, 2 * m * d2 * c3},
      {"(111..111..)", 6, 1, c3 * c3},
  };
  for (const auto& c : out.classes) out.class_sum += c.count();
  const long long m2 = m * m, m3 = m2 * m, m4 = m3 * m, m5 = m4 * m, m6 = m5 * m;
  const long long numerator = 16 * m6 - 24 * m5 + m4 + 18 * m3 + m2 - 12 * m;
  if (numerator % 36 != 0) throw Error(ErrorCode::kInvalidArgument, "non-integral total");
  out.total = numerator / 36;
  return out;
}

}  // namespace rigidmv
