// SPDX-License-Identifier: Apache-2.0
//
// Least-energy solutions by Nehari-projected Sobolev descent, optionally
// polished by Newton-GMRES on the Euler-Lagrange equation.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spiralnls/energy.hpp"
#include "spiralnls/errors.hpp"
#include "spiralnls/nehari.hpp"

namespace spiralnls
{

enum class SeedKind
{
  kRadial,       // positive bump (times the first angular mode on sectors)
  kDipole,       // bump(r) cos(theta), full disk
  kRadialNodal,  // one-zero radial profile from the shooting oracle
  kCustom,
};

const char *to_string(SeedKind kind);
SeedKind parse_seed_kind(const std::string &text);

struct SolveConfig
{
  int max_iters = 20000;
  double grad_tol = 1e-8;  // on |g|_lambda / |u|_lambda
  double step = 1.0;
  SeedKind seed_kind = SeedKind::kRadial;
  std::optional<Field> custom_seed;
  // Length scale of the analytic seeds.
  double seed_scale = 1.0;
  bool newton_refine = false;
  // Descent hands over to Newton below this gradient norm.
  double newton_switch = 3e-3;
  int newton_max_steps = 30;
  bool keep_trace = false;

  void validate() const;
};

struct TraceEntry
{
  int iteration = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;
};

struct SolveReport
{
  Field field;
  EnergyBreakdown energy;
  NehariResidual nehari;
  double linf = 0.0;
  double h1 = 0.0;
  int iterations = 0;
  int newton_steps = 0;
  bool converged = false;
  bool newton_stalled = false;
  double grad_norm = 0.0;
  std::optional<double> nonradiality;
  std::optional<ErrorCode> failure;
  std::string seed;
  std::vector<TraceEntry> trace;

  explicit SolveReport(Field f) : field(std::move(f)) {}
};

Field make_seed(const GridPtr &grid, const ModelParams &params, const SolveConfig &cfg);

SolveReport solve_ground(const GridPtr &grid, const ModelParams &params, const SolveConfig &cfg);
SolveReport solve_nodal(const GridPtr &grid, const ModelParams &params, const SolveConfig &cfg);

struct NewtonResult
{
  Field field;
  int steps = 0;
  double residual = 0.0;  // |g|_lambda / |u|_lambda
  bool stalled = false;
};

// Symmetry classes preserved by the flow: seeds that are exactly radial, or
// exactly even in theta, on the full disk keep that symmetry at every step.
enum class SymmetryClass
{
  kNone,
  kEven,
  kRadial,
};

SymmetryClass detect_symmetry(const Field &u);
void enforce_symmetry(SymmetryClass sym, Field &u);

// Requires a starting residual below 1e-3.
NewtonResult newton_refine(const Field &u, const ModelParams &params, double tol,
                           int max_steps = 30, SymmetryClass sym = SymmetryClass::kNone);

// |g|_lambda / |u|_lambda
double relative_gradient_norm(const EnergyModel &model, const Field &u);

}  // namespace spiralnls
