#include "rigidmv/scalar.hpp"

#include <cstdio>

#include "rigidmv/error.hpp"

namespace rigidmv {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNonSquare: return "NonSquare";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNullityZero: return "NullityZero";
    case ErrorCode::kNullityTooLarge: return "NullityTooLarge";
    case ErrorCode::kZeroPoint: return "ZeroPoint";
    case ErrorCode::kRankDeficientCamera: return "RankDeficientCamera";
    case ErrorCode::kSingularTransform: return "SingularTransform";
    case ErrorCode::kNotRigidMotion: return "NotRigidMotion";
    case ErrorCode::kUndefinedProjection: return "UndefinedProjection";
    case ErrorCode::kNotInVariety: return "NotInVariety";
    case ErrorCode::kNotTriangulable: return "NotTriangulable";
    case ErrorCode::kAmbiguousFloat: return "AmbiguousFloat";
    case ErrorCode::kWrongBidegree: return "WrongBidegree";
    case ErrorCode::kZeroDistance: return "ZeroDistance";
    case ErrorCode::kNonPositiveDistance: return "NonPositiveDistance";
    case ErrorCode::kFamilyMismatch: return "FamilyMismatch";
    case ErrorCode::kRankThree: return "RankThree";
    case ErrorCode::kComplexSplit: return "ComplexSplit";
    case ErrorCode::kIrrationalSplit: return "IrrationalSplit";
    case ErrorCode::kMixedDegrees: return "MixedDegrees";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kExhausted: return "Exhausted";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParse: return "Parse";
  }
  return "Unknown";
}

std::string ScalarTraits<double>::ToString(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Rational ParseRational(const std::string& text) {
  if (text.empty()) throw Error(ErrorCode::kParse, "empty rational");
  const auto dot = text.find('.');
  const auto exp = text.find_first_of("eE");
  if (dot == std::string::npos && exp == std::string::npos) {
    Rational r;
    if (r.set_str(text, 10) != 0 || r.get_den() == 0) {
      throw Error(ErrorCode::kParse, "bad rational '" + text + "'");
    }
    r.canonicalize();
    return r;
  }
  // Decimal literal: parse digits exactly rather than through a double.
  if (exp != std::string::npos) {
    throw Error(ErrorCode::kParse, "exponent notation not supported: " + text);
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  const std::size_t frac_len = text.size() - dot - 1;
  mpz_class num;
  if (num.set_str(digits, 10) != 0) {
    throw Error(ErrorCode::kParse, "bad decimal '" + text + "'");
  }
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool RationalSqrt(const Rational& x, Rational* root) {
  if (sgn(x) < 0) return false;
  const mpz_class& num = x.get_num();
  const mpz_class& den = x.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t())) {
    return false;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  *root = Rational(rn, rd);
  root->canonicalize();
  return true;
}

}  // namespace rigidmv
