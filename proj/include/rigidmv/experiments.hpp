#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rigidmv/json_io.hpp"

namespace rigidmv {

struct ExperimentConfig {
  /// Camera counts, cycled over samples.
  std::vector<int> ns{2};
  int samples = 100;
  std::uint64_t seed = 1;
  int height = 20;
  /// Numerator/denominator bound for random rational world data.
  int bound = 100;
  /// Rig count for SPAN_126_9.
  int rigs = 5;
  /// Wall-clock seconds are omitted by default so reports are byte-identical.
  bool record_timing = false;
  bool exact_rank = false;
};

struct SampleRecord {
  int index = 0;
  std::uint64_t seed = 0;
  int n = 0;
  std::string kind;
  bool pass = false;
  Json detail;
};

struct ExperimentReport {
  std::string tag;
  ExperimentConfig config;
  std::vector<SampleRecord> samples;
  int passed = 0;
  int failed = 0;
  bool pass = false;
  Json summary = Json::object();
  std::optional<double> seconds;
};

/// VANISH, SEPARATE, THM32_EQUIV, COR34_SIXTEEN, SPAN_126_9, COUNTS,
/// EPIPOLE_COMPONENT, GROUP_ACTION, COPLANAR, PAIRWISE_TRIANGLE.
const std::vector<std::string>& ExperimentTags();

/// Deterministic in (tag, config). Throws kInvalidArgument for unknown tags
/// or unusable configs.
ExperimentReport RunExperiment(const std::string& tag, const ExperimentConfig& config);

Json ReportToJson(const ExperimentReport& report);

}  // namespace rigidmv
