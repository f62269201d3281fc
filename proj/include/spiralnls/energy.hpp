// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "spiralnls/polar_grid.hpp"

namespace spiralnls
{

struct EnergyBreakdown
{
  double dirichlet = 0.0;  // int |grad u|^2
  double angular = 0.0;    // (1/lambda^2) int |d_theta u|^2
  double mass = 0.0;       // q int u^2
  double potential = 0.0;  // (1/p) int |u|^p
  double total = 0.0;      // (dirichlet + angular + mass)/2 - potential
};

// Energy functional and its derivatives for one (grid, params) pair. Holds the
// factorized per-mode operator so repeated evaluations are cheap.
class EnergyModel
{
public:
  EnergyModel(GridPtr grid, const ModelParams &params);

  const PolarGrid &grid() const { return op_.grid(); }
  const GridPtr &grid_ptr() const { return op_.grid_ptr(); }
  const ModelParams &params() const { return op_.params(); }
  const PolarOperator &op() const { return op_; }

  double inner(const Field &u, const Field &v) const;
  double norm_sq(const Field &u) const;
  EnergyBreakdown energy(const Field &u) const;
  // Riesz representative of E'(u) in the lambda inner product: u - L^{-1}(|u|^{p-2} u).
  Field gradient(const Field &u) const;
  // E'(u) v = <u, v>_lambda - int |u|^{p-2} u v
  double derivative(const Field &u, const Field &v) const;

  double inner_modes(std::span<const double> a, std::span<const double> b) const;

private:
  PolarOperator op_;
};

double lambda_inner(const Field &u, const Field &v, const ModelParams &params);
double lambda_norm_sq(const Field &u, const ModelParams &params);
EnergyBreakdown energy(const Field &u, const ModelParams &params);
Field gradient(const Field &u, const ModelParams &params);

// |u|^{p-2} u
Field nonlinearity(const Field &u, double p);
// int |u|^p
double lp_norm_pow(const Field &u, double p);
// int u v
double l2_inner(const Field &u, const Field &v);
// (int |grad u|^2 + u^2)^{1/2}
double h1_norm(const Field &u);

}  // namespace spiralnls
