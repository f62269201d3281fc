// SPDX-License-Identifier: Apache-2.0
//
// Run configuration: `key = value` lines, '#' comments, unknown keys rejected.
// Lists are comma separated. Serialization writes the explicitly assigned keys
// in sorted order with normalized values.

#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spiralnls/minimize.hpp"
#include "spiralnls/radial_oracle.hpp"

namespace spiralnls
{

struct RunConfig
{
  // model
  double p = 4.0;
  double q = 1.0;
  double lambda = 1.0;
  // grid
  std::string sector = "full";
  double radius = 30.0;
  int nr = 512;
  int ntheta = 64;
  // solver
  int max_iters = 20000;
  double grad_tol = 1e-8;
  double step = 1.0;
  std::string seed = "radial";
  double seed_scale = 1.0;
  bool newton = false;
  bool trace = false;
  // studies
  std::vector<double> lambdas;
  // radial oracle
  int zeros = 0;
  double radial_rmax = 40.0;
  double radial_step = 0.01;
  // reconstruction and checks
  std::string input;
  int nt = 32;
  int samples = 64;
  // execution
  std::string backend = "omp";
  std::string out;

  std::set<std::string> assigned;

  bool operator==(const RunConfig &other) const = default;
};

const std::vector<std::string> &config_keys();

// Throws Config on unknown keys or malformed values.
void set_config_value(RunConfig &cfg, std::string_view key, std::string_view value);
std::string get_config_value(const RunConfig &cfg, std::string_view key);

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string &path);
std::string serialize_config(const RunConfig &cfg);

ModelParams model_params(const RunConfig &cfg);
GridPtr make_grid(const RunConfig &cfg);
GridPtr make_grid(const RunConfig &cfg, Sector sector);
SolveConfig solve_config(const RunConfig &cfg);
RadialOptions radial_options(const RunConfig &cfg);

}  // namespace spiralnls
