#include "rigidmv/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace rigidmv {
namespace {

struct PairIndex {
  int j;
  int k;
};

std::vector<PairIndex> AllPairs(int n) {
  std::vector<PairIndex> out;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) out.push_back({j, k});
  return out;
}

template <typename T>
double NormOf(std::span<const T> v) {
  double s = 0;
  for (const T& x : v) {
    const double d = ScalarTraits<T>::ToDouble(x);
    s += d * d;
  }
  return std::sqrt(s);
}

// Hadamard column bound for any maximal minor of the matrix whose first four
// columns stack the given cameras and whose remaining columns hold one image
// point each.
template <typename T>
double StackedColumnBound(const CameraRig<T>& rig, std::initializer_list<int> cams,
                          std::initializer_list<const ProjectivePoint<T>*> points) {
  double p = 1.0;
  for (std::size_t c = 0; c < 4; ++c) {
    double s = 0;
    for (int cam : cams)
      for (std::size_t r = 0; r < 3; ++r) {
        const double x = ScalarTraits<T>::ToDouble(rig.camera(cam).matrix()(r, c));
        s += x * x;
      }
    p *= std::sqrt(s);
  }
  for (const auto* u : points) p *= NormOf<T>(u->coords());
  return p;
}

template <typename T>
struct WedgeData {
  std::array<T, 4> tilde;
  // Euclidean norm of `tilde`, or of the full wedge when `tilde` is
  // numerically zero (float only).
  double scale = 1.0;
};

// Lazily computed wedges for a fixed list of tuples.
template <typename T>
class WedgeCache {
 public:
  WedgeCache(const CameraRig<T>& rig, const std::vector<ImageTuple<T>>& tuples)
      : rig_(rig), tuples_(tuples) {}

  const WedgeData<T>& Get(int tuple, int j, int k, int row) {
    auto key = std::make_tuple(tuple, j, k);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      std::array<WedgeData<T>, 6> all;
      const auto b = AssembleB(rig_, j, k, tuples_[tuple][j], tuples_[tuple][k]);
      for (int r = 0; r < 6; ++r) {
        if constexpr (ScalarTraits<T>::kExact) {
          all[r].tilde = Wedge5TildeRaw(b, r);
        } else {
          const Vec<T> w = Wedge5(b, r);
          std::copy_n(w.begin(), 4, all[r].tilde.begin());
          const double tilde = NormOf(std::span<const T>(w.data(), 4));
          const double full = NormOf(std::span<const T>(w));
          all[r].scale = tilde > rig_.tolerances().zero * full ? tilde : full;
          if (all[r].scale == 0) all[r].scale = 1.0;
        }
      }
      it = cache_.emplace(key, all).first;
    }
    return it->second[row];
  }

 private:
  const CameraRig<T>& rig_;
  const std::vector<ImageTuple<T>>& tuples_;
  std::map<std::tuple<int, int, int>, std::array<WedgeData<T>, 6>> cache_;
};

template <typename T>
std::span<const T> View(const std::array<T, 4>& a) {
  return std::span<const T>(a.data(), 4);
}

template <typename T>
T Det4(const std::array<const std::array<T, 4>*, 4>& cols) {
  Mat<T> m(4, 4);
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 4; ++r) m(r, c) = (*cols[c])[r];
  return Det(m);
}

void CheckPositive(double d) {
  if (!(d > 0)) throw Error(ErrorCode::kNonPositiveDistance, "distances must be positive");
}

}  // namespace

const char* FamilyName(Family family) {
  switch (family) {
    case Family::kMultiviewBilinear: return "MULTIVIEW_BILINEAR";
    case Family::kMultiviewTrilinear: return "MULTIVIEW_TRILINEAR";
    case Family::kOcticFull: return "OCTIC_FULL";
    case Family::kOcticNine: return "OCTIC_NINE";
    case Family::kOcticSixteen: return "OCTIC_SIXTEEN";
    case Family::kCoplanar: return "COPLANAR";
    case Family::kPairwiseDistance: return "PAIRWISE_DISTANCE";
    case Family::kGeneralDE: return "GENERAL_DE";
  }
  return "UNKNOWN";
}

Family ParseFamily(const std::string& name) {
  static const std::map<std::string, Family> kNames = {
      {"MULTIVIEW_BILINEAR", Family::kMultiviewBilinear},
      {"MULTIVIEW_TRILINEAR", Family::kMultiviewTrilinear},
      {"OCTIC_FULL", Family::kOcticFull},
      {"OCTIC_NINE", Family::kOcticNine},
      {"OCTIC_SIXTEEN", Family::kOcticSixteen},
      {"COPLANAR", Family::kCoplanar},
      {"PAIRWISE_DISTANCE", Family::kPairwiseDistance},
      {"GENERAL_DE", Family::kGeneralDE},
      {"full", Family::kOcticFull},
      {"nine", Family::kOcticNine},
      {"sixteen", Family::kOcticSixteen},
  };
  auto it = kNames.find(name);
  if (it == kNames.end()) throw Error(ErrorCode::kParse, "unknown family '" + name + "'");
  return it->second;
}

template <typename T>
bool Evaluation<T>::Vanishes(std::size_t i, const Tolerances& tol) const {
  if constexpr (ScalarTraits<T>::kExact) {
    return sgn(values[i]) == 0;
  } else {
    return std::abs(values[i]) <= tol.residual * scales[i];
  }
}

template <typename T>
bool Evaluation<T>::AllVanish(const Tolerances& tol) const {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!Vanishes(i, tol)) return false;
  return true;
}

template <typename T>
std::size_t Evaluation<T>::NonzeroCount(const Tolerances& tol) const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < values.size(); ++i) count += !Vanishes(i, tol);
  return count;
}

template <typename T>
T OcticEval(const CameraRig<T>& rig, const QuadTensor<T>& tensor,
            const WedgeChoice& u_side, const WedgeChoice& v_side,
            const ImageTuple<T>& u, const ImageTuple<T>& v) {
  const auto b = AssembleB(rig, u_side.j, u_side.k, u[u_side.j], u[u_side.k]);
  const auto c = AssembleB(rig, v_side.j, v_side.k, v[v_side.j], v[v_side.k]);
  const auto w1 = Wedge5TildeRaw(b, u_side.row_a);
  const auto w2 = Wedge5TildeRaw(b, u_side.row_b);
  const auto w3 = Wedge5TildeRaw(c, v_side.row_a);
  const auto w4 = Wedge5TildeRaw(c, v_side.row_b);
  return tensor.Eval(View(w1), View(w2), View(w3), View(w4));
}

namespace {

template <typename T>
void CheckCoupledBidegree(const BihomForm<T>& q) {
  if (q.d() == 0 || q.e() == 0) {
    throw Error(ErrorCode::kWrongBidegree, "form must have positive degree in both points");
  }
}

}  // namespace

template <typename T>
ConstraintSystem<T>::ConstraintSystem(const CameraRig<T>& rig, Family family,
                                      ConstraintParams<T> params)
    : rig_(rig),
      family_(family),
      params_(std::move(params)),
      form_(params_.form ? *params_.form : UnitDistanceQ<T>()) {
  const int n = rig_.size();
  switch (family_) {
    case Family::kOcticFull:
    case Family::kOcticNine:
    case Family::kOcticSixteen:
      tensor_ = Polarize(form_);
      break;
    case Family::kMultiviewTrilinear:
      if (n < 3) throw Error(ErrorCode::kFamilyMismatch, "trilinear family needs n >= 3");
      break;
    case Family::kPairwiseDistance:
      for (const auto& d : params_.distances) CheckPositive(ScalarTraits<T>::ToDouble(d));
      break;
    case Family::kGeneralDE:
      CheckCoupledBidegree(form_);
      break;
    default:
      break;
  }
  if (family_ == Family::kOcticSixteen && n < 3) {
    throw Error(ErrorCode::kFamilyMismatch, "OCTIC_SIXTEEN needs n >= 3");
  }
  Enumerate();
}

template <typename T>
int ConstraintSystem<T>::arity() const {
  switch (family_) {
    case Family::kCoplanar: return 4;
    case Family::kPairwiseDistance: return 3;
    default: return 2;
  }
}

template <typename T>
void ConstraintSystem<T>::Enumerate() {
  const int n = rig_.size();
  const auto pairs = AllPairs(n);
  switch (family_) {
    case Family::kMultiviewBilinear:
      for (int side = 0; side < 2; ++side)
        for (const auto& p : pairs) indices_.push_back({side, p.j, p.k});
      break;
    case Family::kMultiviewTrilinear:
      for (int side = 0; side < 2; ++side)
        for (int j = 0; j < n; ++j)
          for (int k = j + 1; k < n; ++k)
            for (int l = k + 1; l < n; ++l)
              for (int m = 0; m < 36; ++m) indices_.push_back({side, j, k, l, m});
      break;
    case Family::kOcticFull:
      for (const auto& p : pairs)
        for (const auto& q : pairs)
          for (int i1 = 0; i1 < 6; ++i1)
            for (int i2 = i1; i2 < 6; ++i2)
              for (int i3 = 0; i3 < 6; ++i3)
                for (int i4 = i3; i4 < 6; ++i4)
                  indices_.push_back({p.j, p.k, i1, i2, q.j, q.k, i3, i4});
      break;
    case Family::kOcticNine:
      for (const auto& p : pairs)
        for (const auto& q : pairs)
          for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
              indices_.push_back({p.j, p.k, i, i, q.j, q.k, k, k});
      break;
    case Family::kOcticSixteen: {
      const PairIndex chosen[2] = {{0, 1}, {0, 2}};
      for (const auto& p : chosen)
        for (const auto& q : chosen)
          for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k)
              indices_.push_back({p.j, p.k, i, i, q.j, q.k, k, k});
      break;
    }
    case Family::kCoplanar:
      for (const auto& p0 : pairs)
        for (const auto& p1 : pairs)
          for (const auto& p2 : pairs)
            for (const auto& p3 : pairs)
              for (int rows = 0; rows < 16; ++rows)
                indices_.push_back({p0.j, p0.k, rows & 1, p1.j, p1.k, (rows >> 1) & 1,
                                    p2.j, p2.k, (rows >> 2) & 1, p3.j, p3.k,
                                    (rows >> 3) & 1});
      break;
    case Family::kPairwiseDistance: {
      const int point_pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
      for (const auto& ab : point_pairs)
        for (const auto& p : pairs)
          for (const auto& q : pairs)
            for (int i = 0; i < 3; ++i)
              for (int k = 0; k < 3; ++k)
                indices_.push_back({ab[0], ab[1], p.j, p.k, i, q.j, q.k, k});
      break;
    }
    case Family::kGeneralDE:
      for (const auto& p : pairs)
        for (const auto& q : pairs)
          for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) indices_.push_back({p.j, p.k, i, q.j, q.k, k});
      break;
  }
}

template <typename T>
Evaluation<T> ConstraintSystem<T>::Evaluate(
    const std::vector<ImageTuple<T>>& tuples) const {
  if (static_cast<int>(tuples.size()) != arity()) {
    throw Error(ErrorCode::kFamilyMismatch,
                std::string(FamilyName(family_)) + " consumes " +
                    std::to_string(arity()) + " tuples");
  }
  for (const auto& t : tuples)
    if (static_cast<int>(t.size()) != rig_.size())
      throw Error(ErrorCode::kShapeMismatch, "tuple length differs from rig size");

  constexpr bool kExact = ScalarTraits<T>::kExact;
  Evaluation<T> out;
  out.values.reserve(indices_.size());
  out.scales.reserve(indices_.size());
  WedgeCache<T> wedges(rig_, tuples);

  switch (family_) {
    case Family::kMultiviewBilinear:
      for (const auto& idx : indices_) {
        const auto& t = tuples[idx[0]];
        const auto b = AssembleB(rig_, idx[1], idx[2], t[idx[1]], t[idx[2]]);
        out.values.push_back(Det(b.matrix));
        out.scales.push_back(
            kExact ? 1.0
                   : StackedColumnBound(rig_, {idx[1], idx[2]}, {&t[idx[1]], &t[idx[2]]}));
      }
      break;
    case Family::kMultiviewTrilinear: {
      std::map<std::tuple<int, int, int, int>, Vec<T>> minors;
      for (const auto& idx : indices_) {
        const auto key = std::make_tuple(idx[0], idx[1], idx[2], idx[3]);
        auto it = minors.find(key);
        if (it == minors.end()) {
          const auto& t = tuples[idx[0]];
          it = minors.emplace(key, TrilinearResiduals(rig_, idx[1], idx[2], idx[3],
                                                      t[idx[1]], t[idx[2]], t[idx[3]]))
                   .first;
        }
        out.values.push_back(it->second[idx[4]]);
        const auto& t = tuples[idx[0]];
        out.scales.push_back(kExact ? 1.0
                                    : StackedColumnBound(rig_, {idx[1], idx[2], idx[3]},
                                                         {&t[idx[1]], &t[idx[2]], &t[idx[3]]}));
      }
      break;
    }
    case Family::kOcticFull:
    case Family::kOcticNine:
    case Family::kOcticSixteen: {
      const QuadTensor<T>& tensor = *tensor_;
      const double tnorm = kExact ? 1.0 : tensor.MaxAbsEntry();
      std::map<std::array<int, 4>, std::array<T, 16>> contracted;
      for (const auto& idx : indices_) {
        const std::array<int, 4> vkey{idx[4], idx[5], idx[6], idx[7]};
        auto it = contracted.find(vkey);
        if (it == contracted.end()) {
          const auto& c3 = wedges.Get(1, idx[4], idx[5], idx[6]);
          const auto& c4 = wedges.Get(1, idx[4], idx[5], idx[7]);
          it = contracted.emplace(vkey, tensor.ContractY(View(c3.tilde), View(c4.tilde)))
                   .first;
        }
        const auto& g = it->second;
        const auto& w1 = wedges.Get(0, idx[0], idx[1], idx[2]);
        const auto& w2 = wedges.Get(0, idx[0], idx[1], idx[3]);
        T value(0);
        for (int a = 0; a < 4; ++a) {
          if (w1.tilde[a] == 0) continue;
          T inner(0);
          for (int b = 0; b < 4; ++b) inner += g[a * 4 + b] * w2.tilde[b];
          value += w1.tilde[a] * inner;
        }
        out.values.push_back(std::move(value));
        double scale = 1.0;
        if constexpr (!kExact) {
          scale = tnorm * w1.scale * w2.scale *
                  wedges.Get(1, idx[4], idx[5], idx[6]).scale *
                  wedges.Get(1, idx[4], idx[5], idx[7]).scale;
        }
        out.scales.push_back(scale);
      }
      break;
    }
    case Family::kCoplanar:
      for (const auto& idx : indices_) {
        std::array<const std::array<T, 4>*, 4> cols;
        double scale = 1.0;
        for (int p = 0; p < 4; ++p) {
          const auto& w = wedges.Get(p, idx[3 * p], idx[3 * p + 1], idx[3 * p + 2]);
          cols[p] = &w.tilde;
          scale *= w.scale;
        }
        out.values.push_back(Det4<T>(cols));
        out.scales.push_back(scale);
      }
      break;
    case Family::kPairwiseDistance: {
      std::array<BihomForm<T>, 3> forms{ScaledDistanceQ<T>(params_.distances[0]),
                                        ScaledDistanceQ<T>(params_.distances[1]),
                                        ScaledDistanceQ<T>(params_.distances[2])};
      for (const auto& idx : indices_) {
        const int which = idx[0] == 0 ? (idx[1] == 1 ? 0 : 1) : 2;
        const auto& w = wedges.Get(idx[0], idx[2], idx[3], idx[4]);
        const auto& c = wedges.Get(idx[1], idx[5], idx[6], idx[7]);
        out.values.push_back(forms[which].Eval(View(w.tilde), View(c.tilde)));
        out.scales.push_back(kExact ? 1.0
                                    : forms[which].MaxAbsCoefficient() * w.scale *
                                          w.scale * c.scale * c.scale);
      }
      break;
    }
    case Family::kGeneralDE: {
      const double qnorm = form_.MaxAbsCoefficient();
      for (const auto& idx : indices_) {
        const auto& w = wedges.Get(0, idx[0], idx[1], idx[2]);
        const auto& c = wedges.Get(1, idx[3], idx[4], idx[5]);
        out.values.push_back(form_.Eval(View(w.tilde), View(c.tilde)));
        out.scales.push_back(kExact ? 1.0
                                    : qnorm * std::pow(w.scale, form_.d()) *
                                          std::pow(c.scale, form_.e()));
      }
      break;
    }
  }
  return out;
}

template <typename T>
Vec<T> TrilinearResiduals(const CameraRig<T>& rig, int j, int k, int l,
                          const ProjectivePoint<T>& u_j,
                          const ProjectivePoint<T>& u_k,
                          const ProjectivePoint<T>& u_l) {
  const int ids[3] = {j, k, l};
  for (int a = 0; a < 3; ++a) {
    if (ids[a] < 0 || ids[a] >= rig.size())
      throw Error(ErrorCode::kIndexOutOfRange, "camera index out of range");
    for (int b = a + 1; b < 3; ++b)
      if (ids[a] == ids[b]) throw Error(ErrorCode::kInvalidArgument, "indices must be distinct");
  }
  const ProjectivePoint<T>* us[3] = {&u_j, &u_k, &u_l};
  Mat<T> m(9, 7);
  for (int blk = 0; blk < 3; ++blk) {
    const Mat<T>& a = rig.camera(ids[blk]).matrix();
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 4; ++c) m(3 * blk + r, c) = a(r, c);
      m(3 * blk + r, 4 + blk) = (*us[blk])[r];
    }
  }
  return MaximalRowMinors(m);
}

template <typename T>
bool RigidMembershipOracle(const CameraRig<T>& rig, const ImageTuple<T>& u,
                           const ImageTuple<T>& v,
                           const std::optional<BihomForm<T>>& form) {
  if (!MultiviewMembership(rig, u).member) return false;
  if (!MultiviewMembership(rig, v).member) return false;
  const auto tu = IsTriangulable(rig, u);
  const auto tv = IsTriangulable(rig, v);
  // Only the n=2 epipole pair is non-triangulable; those threefolds belong
  // to the variety.
  if (!tu.triangulable || !tv.triangulable) return true;
  const auto x = Triangulate(rig, u).world;
  const auto y = Triangulate(rig, v).world;
  const BihomForm<T> q = form ? *form : UnitDistanceQ<T>();
  const T value = q.Eval(x.coords(), y.coords());
  if constexpr (ScalarTraits<T>::kExact) {
    return sgn(value) == 0;
  } else {
    const double scale = q.MaxAbsCoefficient() * std::pow(Norm2(x.coords()), q.d()) *
                         std::pow(Norm2(y.coords()), q.e());
    return std::abs(value) <= rig.tolerances().residual * scale;
  }
}

template <typename T>
bool RigidMembershipByEquations(const CameraRig<T>& rig, const ImageTuple<T>& u,
                                const ImageTuple<T>& v, Family family) {
  if (family != Family::kOcticFull && family != Family::kOcticNine &&
      family != Family::kOcticSixteen) {
    throw Error(ErrorCode::kFamilyMismatch, "membership by equations needs an octic family");
  }
  if (!MultiviewMembership(rig, u).member) return false;
  if (!MultiviewMembership(rig, v).member) return false;
  const ConstraintSystem<T> system(rig, family);
  return system.Evaluate({u, v}).AllVanish(rig.tolerances());
}

template <typename T>
Vec<T> CoplanarResiduals(
    const CameraRig<T>& rig, const std::array<ImageTuple<T>, 4>& tuples,
    const std::vector<std::array<TriangulationWitness, 4>>& choices) {
  Vec<T> out;
  for (const auto& choice : choices) {
    std::array<std::array<T, 4>, 4> cols;
    for (int p = 0; p < 4; ++p) {
      const auto& w = choice[p];
      const auto b = AssembleB(rig, w.j, w.k, tuples[p][w.j], tuples[p][w.k]);
      cols[p] = Wedge5TildeRaw(b, w.row);
    }
    out.push_back(Det4<T>({&cols[0], &cols[1], &cols[2], &cols[3]}));
  }
  return out;
}

template <typename T>
T GeneralConstraintEval(const CameraRig<T>& rig, const BihomForm<T>& q,
                        const TriangulationWitness& u_choice,
                        const TriangulationWitness& v_choice,
                        const ImageTuple<T>& u, const ImageTuple<T>& v) {
  CheckCoupledBidegree(q);
  const auto b = AssembleB(rig, u_choice.j, u_choice.k, u[u_choice.j], u[u_choice.k]);
  const auto c = AssembleB(rig, v_choice.j, v_choice.k, v[v_choice.j], v[v_choice.k]);
  const auto w = Wedge5TildeRaw(b, u_choice.row);
  const auto y = Wedge5TildeRaw(c, v_choice.row);
  return q.Eval(View(w), View(y));
}

template <typename T>
T CollinearityDiscriminant(const T& d12, const T& d13, const T& d23) {
  for (const T* d : {&d12, &d13, &d23}) CheckPositive(ScalarTraits<T>::ToDouble(*d));
  return T((d12 + d13 + d23) * (d12 + d13 - d23) * (d12 - d13 + d23) *
           (-d12 + d13 + d23));
}

template <typename T>
bool TriangleInequalityOk(const T& d12, const T& d13, const T& d23) {
  for (const T* d : {&d12, &d13, &d23}) CheckPositive(ScalarTraits<T>::ToDouble(*d));
  return d12 < d13 + d23 && d13 < d12 + d23 && d23 < d12 + d13;
}

#define RIGIDMV_INSTANTIATE(T)                                                   \
  template struct Evaluation<T>;                                                 \
  template class ConstraintSystem<T>;                                            \
  template T OcticEval(const CameraRig<T>&, const QuadTensor<T>&,                \
                       const WedgeChoice&, const WedgeChoice&,                   \
                       const ImageTuple<T>&, const ImageTuple<T>&);              \
  template Vec<T> TrilinearResiduals(const CameraRig<T>&, int, int, int,         \
                                     const ProjectivePoint<T>&,                  \
                                     const ProjectivePoint<T>&,                  \
                                     const ProjectivePoint<T>&);                 \
  template bool RigidMembershipOracle(const CameraRig<T>&, const ImageTuple<T>&, \
                                      const ImageTuple<T>&,                      \
                                      const std::optional<BihomForm<T>>&);       \
  template bool RigidMembershipByEquations(const CameraRig<T>&,                  \
                                           const ImageTuple<T>&,                 \
                                           const ImageTuple<T>&, Family);        \
  template Vec<T> CoplanarResiduals(                                             \
      const CameraRig<T>&, const std::array<ImageTuple<T>, 4>&,                  \
      const std::vector<std::array<TriangulationWitness, 4>>&);                  \
  template T GeneralConstraintEval(const CameraRig<T>&, const BihomForm<T>&,     \
                                   const TriangulationWitness&,                  \
                                   const TriangulationWitness&,                  \
                                   const ImageTuple<T>&, const ImageTuple<T>&);  \
  template T CollinearityDiscriminant(const T&, const T&, const T&);             \
  template bool TriangleInequalityOk(const T&, const T&, const T&);

RIGIDMV_INSTANTIATE(Rational)
RIGIDMV_INSTANTIATE(double)

}  // namespace rigidmv
