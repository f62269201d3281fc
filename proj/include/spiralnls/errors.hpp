// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace spiralnls
{

enum class ErrorCode
{
  kInvalidArgument,
  kGridMismatch,
  kNonFinite,
  kZeroField,
  kOnePhaseMissing,
  kSeedCollapsed,
  kMaxItersExceeded,
  kLinearSolveFailure,
  kIndefiniteHessianStall,
  kBisectionBracketFailure,
  kPeakAtBoundary,
  kInterpolationOutOfRange,
  kIo,
  kConfig,
};

const char *to_string(ErrorCode code);

// Single exception type for the library; the code identifies the failure class.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string &what);

  ErrorCode code() const { return code_; }
  // what() without the code prefix.
  const std::string &message() const { return message_; }

private:
  ErrorCode code_;
  std::string message_;
};

[[noreturn]] void fail(ErrorCode code, const std::string &what);

inline void require(bool cond, const std::string &what)
{
  if (!cond)
  {
    fail(ErrorCode::kInvalidArgument, what);
  }
}

}  // namespace spiralnls
