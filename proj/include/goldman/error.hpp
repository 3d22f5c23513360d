#pragma once

#include <stdexcept>
#include <string>

namespace goldman {

enum class ErrorCode {
  DegeneratePencil,
  CoincidentWithCenter,
  NotCollinear,
  Degenerate,
  ComplexSpectrum,
  RepeatedEigenvalue,
  InvalidParameters,
  OutOfRange,
  NonConvexHexagon,
  NoRealBranch,
  ConsistencyFailure,
  DepthTooLarge,
  OutsideDomain,
  ZeroVector,
  NotHyperbolic,
  NotTypical,
  DepthInsufficient,
  TrivialWord,
  ParseError,
  CutoffUncertified,
  NoGeodesicsBelowT,
  InvalidTopology,
  PreconditionViolated,
  ConfigParse,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace goldman
