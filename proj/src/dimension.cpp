#include "rigidmv/dimension.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <map>

#include "rigidmv/random.hpp"

namespace rigidmv {
namespace {

using Eigen::Matrix3d;
using Eigen::Vector3d;
using Eigen::VectorXd;

Matrix3d Exp(const Vector3d& w) {
  const double angle = w.norm();
  if (angle == 0) return Matrix3d::Identity();
  return Eigen::AngleAxisd(angle, w / angle).toRotationMatrix();
}

Matrix3d RandomRotation(Rng& rng) {
  Eigen::Quaterniond q(rng.Normal(), rng.Normal(), rng.Normal(), rng.Normal());
  return q.normalized().toRotationMatrix();
}

// Affine image coordinates of all points in all cameras.
VectorXd ImageVector(const std::vector<Eigen::Matrix<double, 3, 4>>& cams,
                     const std::vector<Vector3d>& points) {
  VectorXd out(2 * cams.size() * points.size());
  int r = 0;
  for (const auto& p : points) {
    for (const auto& a : cams) {
      const Vector3d u = a.leftCols<3>() * p + a.col(3);
      out(r++) = u(0) / u(2);
      out(r++) = u(1) / u(2);
    }
  }
  return out;
}

// Planar triangle with the given side lengths, or none if infeasible.
std::array<Vector3d, 3> CanonicalTriangle(const std::array<double, 3>& d) {
  const double d12 = d[0], d13 = d[1], d23 = d[2];
  const double x = (d12 * d12 + d13 * d13 - d23 * d23) / (2 * d12);
  const double y2 = d13 * d13 - x * x;
  return {Vector3d(0, 0, 0), Vector3d(d12, 0, 0), Vector3d(x, std::sqrt(std::max(y2, 0.0)), 0)};
}

}  // namespace

const char* ScenarioName(Scenario s) {
  switch (s) {
    case Scenario::kRigidPair: return "RIGID_PAIR";
    case Scenario::kCoplanar4: return "COPLANAR_4";
    case Scenario::kPairwise3: return "PAIRWISE_3";
  }
  return "UNKNOWN";
}

Scenario ParseScenario(const std::string& name) {
  static const std::map<std::string, Scenario> kNames = {
      {"RIGID_PAIR", Scenario::kRigidPair},
      {"COPLANAR_4", Scenario::kCoplanar4},
      {"PAIRWISE_3", Scenario::kPairwise3}};
  auto it = kNames.find(name);
  if (it == kNames.end()) throw Error(ErrorCode::kParse, "unknown scenario '" + name + "'");
  return it->second;
}

DimensionReport NumericDimension(const CameraRig<double>& rig, Scenario scenario,
                                 const DimensionOptions& options) {
  if (scenario == Scenario::kPairwise3) {
    const auto& d = options.distances;
    for (double x : d)
      if (!(x > 0)) throw Error(ErrorCode::kNonPositiveDistance, "distances must be positive");
    // Degenerate (collinear) triangles are feasible; strictly violated
    // inequalities have no real points.
    const double slack = 1e-12 * (d[0] + d[1] + d[2]);
    if (d[0] > d[1] + d[2] + slack || d[1] > d[0] + d[2] + slack || d[2] > d[0] + d[1] + slack) {
      throw Error(ErrorCode::kInfeasible, "distances violate the triangle inequality");
    }
  }

  std::vector<Eigen::Matrix<double, 3, 4>> cams;
  for (const auto& cam : rig.cameras()) {
    Eigen::Matrix<double, 3, 4> a;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 4; ++c) a(r, c) = cam.matrix()(r, c);
    // Unit Frobenius norm keeps the Jacobian columns comparable.
    cams.push_back(a / a.norm());
  }

  Rng rng(options.seed);
  DimensionReport report;
  for (int base = 0; base < options.base_points; ++base) {
    const Matrix3d r0 = RandomRotation(rng);
    const Vector3d c0(rng.Normal(), rng.Normal(), rng.Normal());
    VectorXd theta0;
    std::function<std::vector<Vector3d>(const VectorXd&)> points;

    switch (scenario) {
      case Scenario::kRigidPair:
        // (c, omega): endpoints c +- R0 exp(omega) e1 / 2.
        theta0 = VectorXd::Zero(6);
        theta0.head<3>() = c0;
        points = [r0](const VectorXd& t) {
          const Vector3d h = r0 * Exp(t.segment<3>(3)) * Vector3d(0.5, 0, 0);
          const Vector3d c = t.head<3>();
          return std::vector<Vector3d>{c + h, c - h};
        };
        break;
      case Scenario::kCoplanar4:
        // (c, omega, a_1, b_1, ..., a_4, b_4): c + R0 exp(omega) (a_i, b_i, 0).
        theta0 = VectorXd::Zero(14);
        theta0.head<3>() = c0;
        for (int i = 0; i < 8; ++i) theta0(6 + i) = rng.Normal();
        points = [r0](const VectorXd& t) {
          const Matrix3d r = r0 * Exp(t.segment<3>(3));
          std::vector<Vector3d> out;
          for (int i = 0; i < 4; ++i)
            out.push_back(t.head<3>() + r * Vector3d(t(6 + 2 * i), t(7 + 2 * i), 0));
          return out;
        };
        break;
      case Scenario::kPairwise3: {
        const auto tri = CanonicalTriangle(options.distances);
        theta0 = VectorXd::Zero(6);
        theta0.head<3>() = c0;
        points = [r0, tri](const VectorXd& t) {
          const Matrix3d r = r0 * Exp(t.segment<3>(3));
          std::vector<Vector3d> out;
          for (const auto& p : tri) out.push_back(t.head<3>() + r * p);
          return out;
        };
        break;
      }
    }

    const VectorXd f0 = ImageVector(cams, points(theta0));
    Eigen::MatrixXd jac(f0.size(), theta0.size());
    for (int p = 0; p < theta0.size(); ++p) {
      VectorXd plus = theta0, minus = theta0;
      plus(p) += options.step;
      minus(p) -= options.step;
      jac.col(p) =
          (ImageVector(cams, points(plus)) - ImageVector(cams, points(minus))) / (2 * options.step);
    }
    Mat<double> m(jac.rows(), jac.cols());
    for (int r = 0; r < jac.rows(); ++r)
      for (int c = 0; c < jac.cols(); ++c) m(r, c) = jac(r, c);
    Tolerances tol;
    tol.rank = options.rank_tolerance;
    report.ranks.push_back(Rank(m, tol).rank);
    report.parameters = static_cast<int>(theta0.size());
  }
  // Most frequent rank; any disagreement is flagged through `stable`.
  std::map<int, int> votes;
  for (int r : report.ranks) ++votes[r];
  int best = 0;
  for (const auto& [rank, count] : votes)
    if (count > best) {
      best = count;
      report.dimension = rank;
    }
  report.stable = votes.size() == 1;
  return report;
}

}  // namespace rigidmv
