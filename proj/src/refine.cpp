#include "rigidmv/refine.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace rigidmv {
namespace {

using Eigen::Matrix3d;
using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::VectorXd;
using Camera34 = Eigen::Matrix<double, 3, 4>;

std::vector<Camera34> Cameras(const CameraRig<double>& rig) {
  std::vector<Camera34> out;
  for (const auto& cam : rig.cameras()) {
    Camera34 a;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 4; ++c) a(r, c) = cam.matrix()(r, c);
    out.push_back(a);
  }
  return out;
}

std::vector<Vector2d> Affine(const ImageTuple<double>& u) {
  std::vector<Vector2d> out;
  for (const auto& p : u) {
    if (p[2] == 0) throw Error(ErrorCode::kInvalidArgument, "image point at infinity");
    out.emplace_back(p[0] / p[2], p[1] / p[2]);
  }
  return out;
}

// Linear (DLT) triangulation in the affine chart.
Vector3d Dlt(const std::vector<Camera34>& cams, const std::vector<Vector2d>& u) {
  Eigen::MatrixXd m(2 * cams.size(), 4);
  for (std::size_t i = 0; i < cams.size(); ++i) {
    m.row(2 * i) = u[i](0) * cams[i].row(2) - cams[i].row(0);
    m.row(2 * i + 1) = u[i](1) * cams[i].row(2) - cams[i].row(1);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::Vector4d x = svd.matrixV().col(3);
  if (x(3) == 0) throw Error(ErrorCode::kNotTriangulable, "triangulated point at infinity");
  return x.head<3>() / x(3);
}

// Residuals (predicted - observed) at r[offset..] and d(residual)/d(point)
// in the rows of jac.
void PointTerms(const std::vector<Camera34>& cams, const std::vector<Vector2d>& obs,
                const Vector3d& p, VectorXd* r, Eigen::MatrixXd* jac, int offset) {
  for (std::size_t i = 0; i < cams.size(); ++i) {
    const Vector3d q = cams[i].leftCols<3>() * p + cams[i].col(3);
    const double w = q(2);
    (*r)(offset + 2 * i) = q(0) / w - obs[i](0);
    (*r)(offset + 2 * i + 1) = q(1) / w - obs[i](1);
    if (jac) {
      for (int k = 0; k < 2; ++k) {
        jac->block<1, 3>(2 * i + k, 0) =
            (cams[i].block<1, 3>(k, 0) * w - q(k) * cams[i].block<1, 3>(2, 0)) / (w * w);
      }
    }
  }
}

struct Problem {
  std::vector<Camera34> cams;
  std::vector<Vector2d> u, v;

  // theta = (X, d); returns residual vector and optionally the Jacobian.
  VectorXd Residual(const VectorXd& theta, Eigen::MatrixXd* jac) const {
    const int m = static_cast<int>(2 * cams.size());
    const Vector3d x = theta.head<3>();
    const Vector3d d = theta.tail<3>();
    const double len = d.norm();
    const Vector3d y = x + d / len;
    VectorXd r(2 * m);
    Eigen::MatrixXd jx(m, 3), jy(m, 3);
    PointTerms(cams, u, x, &r, jac ? &jx : nullptr, 0);
    PointTerms(cams, v, y, &r, jac ? &jy : nullptr, m);
    if (jac) {
      jac->setZero(2 * m, 6);
      jac->block(0, 0, m, 3) = jx;
      const Matrix3d dy_dd = (Matrix3d::Identity() - d * d.transpose() / (len * len)) / len;
      jac->block(m, 0, m, 3) = jy;
      jac->block(m, 3, m, 3) = jy * dy_dd;
    }
    return r;
  }
};

}  // namespace

double ReprojectionResidual(const CameraRig<double>& rig, const std::array<double, 3>& x,
                            const ImageTuple<double>& u) {
  const auto cams = Cameras(rig);
  const auto obs = Affine(u);
  VectorXd r(2 * cams.size());
  PointTerms(cams, obs, Vector3d(x[0], x[1], x[2]), &r, nullptr, 0);
  return r.squaredNorm();
}

RefineResult RigidTriangulateRefine(const CameraRig<double>& rig, const ImageTuple<double>& u,
                                    const ImageTuple<double>& v, const RefineOptions& options) {
  if (static_cast<int>(u.size()) != rig.size() || static_cast<int>(v.size()) != rig.size()) {
    throw Error(ErrorCode::kShapeMismatch, "tuple length differs from rig size");
  }
  Problem problem{Cameras(rig), Affine(u), Affine(v)};

  const Vector3d x0 = Dlt(problem.cams, problem.u);
  const Vector3d y0 = Dlt(problem.cams, problem.v);
  Vector3d dir = y0 - x0;
  if (dir.norm() == 0) dir = Vector3d::UnitX();
  dir.normalize();
  const Vector3d mid = (x0 + y0) / 2;
  VectorXd theta(6);
  theta.head<3>() = mid - dir / 2;
  theta.tail<3>() = dir;

  RefineResult result;
  double cost = problem.Residual(theta, nullptr).squaredNorm();
  result.initial_residual = cost;
  double lambda = options.initial_damping;
  Eigen::MatrixXd jac;
  for (int it = 0; it < options.max_iterations; ++it) {
    result.iterations = it + 1;
    const VectorXd r = problem.Residual(theta, &jac);
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const VectorXd g = jac.transpose() * r;
    bool accepted = false;
    double step_norm = 0;
    while (lambda < 1e16) {
      Eigen::MatrixXd h = jtj;
      h.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
      const VectorXd step = h.ldlt().solve(-g);
      step_norm = step.norm();
      VectorXd candidate = theta + step;
      // Keep the direction parameter at unit length (a gauge choice).
      candidate.tail<3>().normalize();
      const double new_cost = problem.Residual(candidate, nullptr).squaredNorm();
      if (std::isfinite(new_cost) && new_cost < cost) {
        theta = candidate;
        cost = new_cost;
        lambda = std::max(lambda / options.damping_factor, 1e-15);
        accepted = true;
        break;
      }
      lambda *= options.damping_factor;
      if (step_norm < options.step_tolerance) break;
    }
    if (!accepted || step_norm < options.step_tolerance * (1 + theta.norm())) {
      result.converged = true;
      break;
    }
  }

  const Vector3d x = theta.head<3>();
  const Vector3d y = x + theta.tail<3>().normalized();
  result.x = {x(0), x(1), x(2)};
  result.y = {y(0), y(1), y(2)};
  result.residual = cost;
  return result;
}

}  // namespace rigidmv
