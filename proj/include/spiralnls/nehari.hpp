// SPDX-License-Identifier: Apache-2.0
//
// Projections onto the Nehari set {E'(u) u = 0} and the nodal set
// {u+ != 0, u- != 0, E'(u) u+ = E'(u) u- = 0}.
//
// Part norms use the indicator convention: the "norm" of u+ is <u, u+>_lambda,
// which on the grid differs from <u+, u+>_lambda by the (small, nonnegative)
// cross term <u+, u->_lambda. With this convention E(u) = E+(u) + E-(u) exactly.

#pragma once

#include "spiralnls/energy.hpp"

namespace spiralnls
{

struct NehariResidual
{
  // E'(u) u, E'(u) u+ and E'(u) u-, each divided by |u|_lambda^2.
  double single = 0.0;
  double plus = 0.0;
  double minus = 0.0;
};

struct NodalSplit
{
  double plus_norm_sq = 0.0;   // <u+, u+>_lambda
  double minus_norm_sq = 0.0;  // <u-, u->_lambda
  double cross = 0.0;          // <u+, u->_lambda
  double plus_lp = 0.0;        // int |u+|^p
  double minus_lp = 0.0;       // int |u-|^p
};

Field positive_part(const Field &u);
Field negative_part(const Field &u);

// t > 0 with t u on the Nehari set. Throws ZeroField.
double nehari_scale(const EnergyModel &model, const Field &u);
double nehari_scale(const Field &u, const ModelParams &params);

NodalSplit nodal_split(const EnergyModel &model, const Field &u);

// Coefficients (a, b) > 0 with a u+ + b u- on the nodal set. Throws OnePhaseMissing.
std::pair<double, double> nodal_coefficients(const NodalSplit &split, double p);

Field project_nodal(const EnergyModel &model, const Field &u);
Field project_nodal(const Field &u, const ModelParams &params);

NehariResidual manifold_residual(const EnergyModel &model, const Field &u);
NehariResidual manifold_residual(const Field &u, const ModelParams &params);

// E+(u) = <u, u+>/2 - |u+|_p^p / p, and likewise for u-.
std::pair<double, double> part_energies(const EnergyModel &model, const Field &u);

}  // namespace spiralnls
