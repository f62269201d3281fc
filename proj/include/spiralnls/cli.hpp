// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver. Exit status: 0 success, 2 usage or configuration error,
// 3 a `check` invariant failed, 4 numerical failure, 5 I/O failure.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spiralnls/errors.hpp"
#include "spiralnls/solution_io.hpp"

namespace spiralnls
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCheckFailed = 3;
inline constexpr int kExitNumerical = 4;
inline constexpr int kExitIo = 5;

// Environment variable naming the output directory when neither --out nor the
// config file sets one.
inline constexpr const char *kOutEnv = "SPIRALNLS_OUT";
inline constexpr const char *kDefaultOut = "spiralnls-out";

int exit_code_for(ErrorCode code);

struct InvariantCheck
{
  std::string name;
  bool ok = false;
  double value = 0.0;
  double limit = 0.0;
};

// Diagnostics applied to a stored solution; the first failing entry names the
// violated invariant.
std::vector<InvariantCheck> check_solution(const StoredSolution &s);

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int run_cli(int argc, char **argv);

}  // namespace spiralnls
