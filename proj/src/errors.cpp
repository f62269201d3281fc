// SPDX-License-Identifier: Apache-2.0

#include "spiralnls/errors.hpp"

namespace spiralnls
{

const char *to_string(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kGridMismatch:
      return "GridMismatch";
    case ErrorCode::kNonFinite:
      return "NonFinite";
    case ErrorCode::kZeroField:
      return "ZeroField";
    case ErrorCode::kOnePhaseMissing:
      return "OnePhaseMissing";
    case ErrorCode::kSeedCollapsed:
      return "SeedCollapsed";
    case ErrorCode::kMaxItersExceeded:
      return "MaxItersExceeded";
    case ErrorCode::kLinearSolveFailure:
      return "LinearSolveFailure";
    case ErrorCode::kIndefiniteHessianStall:
      return "IndefiniteHessianStall";
    case ErrorCode::kBisectionBracketFailure:
      return "BisectionBracketFailure";
    case ErrorCode::kPeakAtBoundary:
      return "PeakAtBoundary";
    case ErrorCode::kInterpolationOutOfRange:
      return "InterpolationOutOfRange";
    case ErrorCode::kIo:
      return "Io";
    case ErrorCode::kConfig:
      return "Config";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string &what)
  : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), message_(what)
{
}

void fail(ErrorCode code, const std::string &what)
{
  throw Error(code, what);
}

}  // namespace spiralnls
