#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rigidmv/camera.hpp"

namespace rigidmv {

enum class Scenario { kRigidPair, kCoplanar4, kPairwise3 };

const char* ScenarioName(Scenario s);
/// "RIGID_PAIR", "COPLANAR_4", "PAIRWISE_3".
Scenario ParseScenario(const std::string& name);

struct DimensionOptions {
  int base_points = 5;
  double step = 1e-6;
  double rank_tolerance = 1e-6;
  std::uint64_t seed = 1;
  /// d12, d13, d23 for PAIRWISE_3.
  std::array<double, 3> distances{1.0, 1.0, 1.0};
};

struct DimensionReport {
  int dimension = 0;
  std::vector<int> ranks;  // one per base point
  int parameters = 0;
  bool stable = false;
};

/// Rank of the Jacobian of (constraint parametrization) followed by the
/// affine image map, at several random feasible base points. Throws
/// kInfeasible when PAIRWISE_3 distances violate the triangle inequality.
DimensionReport NumericDimension(const CameraRig<double>& rig, Scenario scenario,
                                 const DimensionOptions& options = {});

}  // namespace rigidmv
