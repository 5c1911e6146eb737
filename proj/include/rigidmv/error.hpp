#pragma once

#include <stdexcept>
#include <string>

namespace rigidmv {

enum class ErrorCode {
  kShapeMismatch,
  kNonSquare,
  kIndexOutOfRange,
  kNullityZero,
  kNullityTooLarge,
  kZeroPoint,
  kRankDeficientCamera,
  kSingularTransform,
  kNotRigidMotion,
  kUndefinedProjection,
  kNotInVariety,
  kNotTriangulable,
  kAmbiguousFloat,
  kWrongBidegree,
  kZeroDistance,
  kNonPositiveDistance,
  kFamilyMismatch,
  kRankThree,
  kComplexSplit,
  kIrrationalSplit,
  kMixedDegrees,
  kUnsupported,
  kInfeasible,
  kExhausted,
  kInvalidArgument,
  kParse,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rigidmv
