// SPDX-License-Identifier: Apache-2.0
//
// Parameter studies over the pitch: level sweeps locating the change of
// symmetry of nodal minimizers, large-pitch translation asymptotics and the
// small-pitch rescaling limit.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spiralnls/minimize.hpp"
#include "spiralnls/radial_oracle.hpp"

namespace spiralnls
{

enum class NodalWinner
{
  kRadialNodal,
  kDipole,
};

const char *to_string(NodalWinner w);

// Classification threshold on the nonradiality index of the best nodal field.
inline constexpr double kRadialThreshold = 1e-6;

struct SweepRecord
{
  double lambda = 0.0;
  double alpha_hat = 0.0;         // full-disk ground level
  double c_hat = 0.0;             // half-disk ground level
  double beta_hat = 0.0;          // min over nodal seeds
  double beta_dipole = 0.0;
  double beta_radial_nodal = 0.0;
  double nonradiality = 0.0;      // of the best nodal field
  NodalWinner winner = NodalWinner::kRadialNodal;
  double tau = 0.0;               // peak location of the half-disk ground state
  bool converged = false;         // all four solves converged
  std::string error;              // nonempty if a solve failed
};

struct SweepGrids
{
  GridPtr full;
  GridPtr half;
};

struct LambdaBracket
{
  std::optional<double> last_radial;  // largest lambda won by the radial class
  std::optional<double> first_dipole; // smallest lambda won by the dipole class
  int transitions = 0;                // winner changes along the sweep
};

std::vector<SweepRecord> sweep_lambda(const ModelParams &base, const std::vector<double> &lambdas,
                                      const SweepGrids &grids, const SolveConfig &cfg);
LambdaBracket bracket(const std::vector<SweepRecord> &records);

// x1-location of the maximum along theta = 0 of a sector field: discrete
// argmax in r refined by the parabola through its neighbours. Throws
// PeakAtBoundary when the maximum sits at the first or last radial node or
// within `margin` of r = R.
double peak_location(const Field &u, double margin = 10.0);

struct InfinityRecord
{
  double lambda = 0.0;
  double tau = 0.0;
  double tau_over_lambda = 0.0;
  double energy = 0.0;
  double h1_gap = 0.0;           // |u(. + tau e1) - w|_{H^1}
  double h1_gap_relative = 0.0;  // divided by |w|_{H^1}
  bool converged = false;
  std::string error;             // PeakAtBoundary and solver failures
};

// H^1 distance between a sector field and the radial profile centred at (tau, 0).
double recentered_h1_gap(const Field &u, const RadialProfile &w, double tau);

std::vector<InfinityRecord> asymptotics_infinity(const ModelParams &params,
                                                 const std::vector<double> &lambdas,
                                                 const GridPtr &grid, const SolveConfig &cfg,
                                                 const RadialProfile &w);

struct RescaleRecord
{
  double lambda = 0.0;
  double c_lambda = 0.0;           // E_lambda on the sector for q = 1
  double j_lambda = 0.0;           // rescaled level evaluated on the limit grid
  double identity_error = 0.0;     // |j - lambda^{4/(p-2)} c| / j
  double limit_gap = 0.0;          // |v - v*|_{1,0} / |v*|_{1,0}
  bool converged = false;
  std::string error;
};

struct LimitSolution
{
  double energy = 0.0;               // on the given grid
  double energy_large_radius = 0.0;  // on a 1.5x larger radius, same spacing
  double radius_change = 0.0;        // relative difference of the two
  bool converged = false;
};

struct ZeroStudy
{
  std::vector<RescaleRecord> records;
  LimitSolution limit;
};

// Limit functional with unit pitch and no mass: J(v) = E(v; q = 0, lambda = 1) + (mass/2) |v|_2^2.
double rescaled_level(const Field &v, double p, double mass);

// Rescales a field solved on radius lambda R onto the aligned grid of radius R.
Field rescale_to_limit_grid(const Field &u, const GridPtr &limit_grid, double lambda, double p);

ZeroStudy asymptotics_zero(const ModelParams &params, const std::vector<double> &lambdas,
                           const GridPtr &grid, const SolveConfig &cfg);

}  // namespace spiralnls
