#pragma once

#include <array>

#include "rigidmv/camera.hpp"

namespace rigidmv {

struct RefineOptions {
  int max_iterations = 200;
  double step_tolerance = 1e-10;
  double initial_damping = 1e-3;
  double damping_factor = 10.0;
};

struct RefineResult {
  std::array<double, 3> x{};
  std::array<double, 3> y{};
  /// Sum of squared affine reprojection errors over both tuples.
  double residual = 0.0;
  /// Residual of the initial estimate after projection onto |X - Y| = 1.
  double initial_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Levenberg-Marquardt over (X, d) with Y = X + d / |d|, started from
/// linear triangulation of each tuple projected to a unit segment about the
/// midpoint. Only decreasing steps are accepted, so the returned residual
/// never exceeds initial_residual. The result satisfies |X - Y| = 1 up to
/// rounding. Tuples must have finite image points (u2 != 0).
RefineResult RigidTriangulateRefine(const CameraRig<double>& rig, const ImageTuple<double>& u,
                                    const ImageTuple<double>& v,
                                    const RefineOptions& options = {});

/// Sum of squared affine reprojection errors of world point x against tuple u.
double ReprojectionResidual(const CameraRig<double>& rig, const std::array<double, 3>& x,
                            const ImageTuple<double>& u);

}  // namespace rigidmv
