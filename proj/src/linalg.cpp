#include "rigidmv/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rigidmv {
namespace {

Eigen::MatrixXd ToEigen(const Mat<double>& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

// Bareiss elimination in place over Q. Returns rank; the sign of the row
// permutation is written to *sign.
int BareissEliminate(std::vector<std::vector<Rational>>& a, std::size_t cols,
                     int* sign) {
  const std::size_t rows = a.size();
  Rational prev(1);
  std::size_t r = 0;
  *sign = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      *sign = -*sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

std::vector<std::vector<Rational>> Rows(const Mat<Rational>& m) {
  std::vector<std::vector<Rational>> a(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) a[r] = m.Row(r);
  return a;
}

// Reduced row echelon form over Q; returns pivot columns.
std::vector<std::size_t> Rref(std::vector<std::vector<Rational>>& a,
                              std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && sgn(a[p][c]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<Vec<Rational>> ExactKernel(const Mat<Rational>& m) {
  auto a = Rows(m);
  const auto pivots = Rref(a, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec<Rational> v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a[k][free];
    basis.push_back(ClearDenominators(v));
  }
  return basis;
}

Eigen::JacobiSVD<Eigen::MatrixXd> FullSvd(const Mat<double>& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(
      ToEigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
}

int FloatRankFromSingular(const Eigen::VectorXd& s, double tol) {
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++rank;
  return rank;
}

}  // namespace

Vec<Rational> ClearDenominators(const Vec<Rational>& v) {
  mpz_class lcm(1);
  for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
                                  x.get_den_mpz_t());
  std::vector<mpz_class> ints;
  ints.reserve(v.size());
  mpz_class g(0);
  for (const auto& x : v) {
    mpz_class n = x.get_num() * (lcm / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ints.push_back(std::move(n));
  }
  Vec<Rational> out;
  out.reserve(v.size());
  for (auto& n : ints) {
    if (g != 0) n /= g;
    out.emplace_back(n);
  }
  return out;
}

template <>
Rational Det(const Mat<Rational>& m) {
  if (!m.square()) throw Error(ErrorCode::kNonSquare, "det of non-square");
  if (m.rows() == 0) return Rational(1);
  auto a = Rows(m);
  int sign = 1;
  const int rank = BareissEliminate(a, m.cols(), &sign);
  if (rank < static_cast<int>(m.rows())) return Rational(0);
  Rational d = a.back().back();
  if (sign < 0) d = -d;
  return d;
}

template <>
double Det(const Mat<double>& m) {
  if (!m.square()) throw Error(ErrorCode::kNonSquare, "det of non-square");
  const std::size_t n = m.rows();
  std::vector<double> a(m.data().begin(), m.data().end());
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[p * n + c])) p = r;
    if (a[p * n + c] == 0.0) return 0.0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[p * n + j], a[c * n + j]);
      det = -det;
    }
    const double piv = a[c * n + c];
    det *= piv;
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / piv;
      for (std::size_t j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
    }
  }
  return det;
}

template <>
RankReport Rank(const Mat<Rational>& m, const Tolerances&) {
  RankReport report;
  auto a = Rows(m);
  int sign = 1;
  report.rank = BareissEliminate(a, m.cols(), &sign);
  return report;
}

template <>
RankReport Rank(const Mat<double>& m, const Tolerances& tol) {
  RankReport report;
  report.tolerance = tol.rank;
  if (m.rows() == 0 || m.cols() == 0) return report;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(ToEigen(m));
  const auto& s = svd.singularValues();
  report.pivots.assign(s.data(), s.data() + s.size());
  report.rank = FloatRankFromSingular(s, tol.rank);
  return report;
}

template <>
std::vector<Vec<Rational>> KernelBasis(const Mat<Rational>& m,
                                       const Tolerances&) {
  return ExactKernel(m);
}

template <>
std::vector<Vec<double>> KernelBasis(const Mat<double>& m,
                                     const Tolerances& tol) {
  const auto svd = FullSvd(m);
  const int rank = FloatRankFromSingular(svd.singularValues(), tol.rank);
  std::vector<Vec<double>> basis;
  const auto& v = svd.matrixV();
  for (Eigen::Index c = rank; c < v.cols(); ++c) {
    Vec<double> col(v.rows());
    for (Eigen::Index r = 0; r < v.rows(); ++r) col[r] = v(r, c);
    basis.push_back(std::move(col));
  }
  return basis;
}

template <typename T>
Vec<T> KernelVector(const Mat<T>& m, const Tolerances& tol) {
  auto basis = KernelBasis(m, tol);
  if (basis.empty()) {
    throw Error(ErrorCode::kNullityZero, "matrix has trivial kernel");
  }
  if (basis.size() > 1) {
    throw Error(ErrorCode::kNullityTooLarge,
                "kernel has dimension " + std::to_string(basis.size()));
  }
  return std::move(basis.front());
}

template <typename T>
Vec<T> SignedMaximalMinors(const Mat<T>& m) {
  if (m.cols() != m.rows() + 1) {
    throw Error(ErrorCode::kShapeMismatch,
                "signed maximal minors need a k x (k+1) matrix");
  }
  Vec<T> w(m.cols());
  for (std::size_t i = 0; i < m.cols(); ++i) {
    T d = Det(m.WithoutCol(i));
    w[i] = (i % 2 == 0) ? d : T(-d);
  }
  return w;
}

template <>
Mat<Rational> Inverse(const Mat<Rational>& m, const Tolerances&) {
  if (!m.square()) throw Error(ErrorCode::kNonSquare, "inverse of non-square");
  const std::size_t n = m.rows();
  std::vector<std::vector<Rational>> a(n);
  for (std::size_t r = 0; r < n; ++r) {
    a[r] = m.Row(r);
    a[r].resize(2 * n, Rational(0));
    a[r][n + r] = 1;
  }
  const auto pivots = Rref(a, 2 * n);
  if (pivots.size() < n || pivots[n - 1] != n - 1) {
    throw Error(ErrorCode::kSingularTransform, "matrix is singular");
  }
  Mat<Rational> out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = a[r][n + c];
  return out;
}

template <>
Mat<double> Inverse(const Mat<double>& m, const Tolerances& tol) {
  if (!m.square()) throw Error(ErrorCode::kNonSquare, "inverse of non-square");
  if (Rank(m, tol).rank < static_cast<int>(m.rows())) {
    throw Error(ErrorCode::kSingularTransform, "matrix is singular");
  }
  const Eigen::MatrixXd inv = ToEigen(m).fullPivLu().inverse();
  Mat<double> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = inv(r, c);
  return out;
}

template <typename T>
Vec<T> MaximalRowMinors(const Mat<T>& m) {
  const std::size_t r = m.rows(), c = m.cols();
  if (r < c) throw Error(ErrorCode::kShapeMismatch, "need rows >= cols");
  Vec<T> out;
  std::vector<bool> keep(r, false);
  std::fill(keep.begin(), keep.begin() + c, true);
  do {
    Mat<T> sub(c, c);
    for (std::size_t i = 0, o = 0; i < r; ++i) {
      if (!keep[i]) continue;
      for (std::size_t j = 0; j < c; ++j) sub(o, j) = m(i, j);
      ++o;
    }
    out.push_back(Det(sub));
  } while (std::prev_permutation(keep.begin(), keep.end()));
  return out;
}

template Vec<Rational> KernelVector(const Mat<Rational>&, const Tolerances&);
template Vec<double> KernelVector(const Mat<double>&, const Tolerances&);
template Vec<Rational> SignedMaximalMinors(const Mat<Rational>&);
template Vec<double> SignedMaximalMinors(const Mat<double>&);
template Vec<Rational> MaximalRowMinors(const Mat<Rational>&);
template Vec<double> MaximalRowMinors(const Mat<double>&);

}  // namespace rigidmv
