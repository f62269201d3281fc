// SPDX-License-Identifier: Apache-2.0
//
// Solution files: a typed header block of `# key,type,value` lines followed by
// `j,k,r,theta,u` rows. Reals are written with shortest round-trip formatting,
// so save/load is bit-exact.

#pragma once

#include <string>

#include "spiralnls/polar_grid.hpp"

namespace spiralnls
{

struct StoredSolution
{
  Field field;
  ModelParams params;
  std::string kind = "ground";  // ground | nodal
  double grad_tol = 1e-8;
  std::string seed;
};

std::string solution_to_csv(const StoredSolution &s);
// Throws Io with a description of the first malformed line.
StoredSolution solution_from_csv(const std::string &text);

void save_solution(const std::string &path, const StoredSolution &s);
StoredSolution load_solution(const std::string &path);

// Whole-file helpers; throw Io with the path on failure.
std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &content);

}  // namespace spiralnls
