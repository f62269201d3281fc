// SPDX-License-Identifier: Apache-2.0

#include "spiralnls/energy.hpp"

#include <cmath>
#include <vector>

#include "spiralnls/errors.hpp"
#include "spiralnls/kernels.hpp"

namespace spiralnls
{

EnergyModel::EnergyModel(GridPtr grid, const ModelParams &params) : op_(std::move(grid), params)
{
}

double EnergyModel::inner_modes(std::span<const double> a, std::span<const double> b) const
{
  const QuadraticParts parts = quadratic_parts(grid(), a, b);
  return parts.radial + parts.inv_r_sq + params().inv_lambda_sq() * parts.angular +
         params().q * parts.l2;
}

double EnergyModel::inner(const Field &u, const Field &v) const
{
  check_same_grid(u, v);
  if (!u.grid().same_as(grid()))
  {
    fail(ErrorCode::kGridMismatch, "field grid differs from energy model grid");
  }
  const std::vector<double> a = to_modes(u);
  if (&u == &v)
  {
    return inner_modes(a, a);
  }
  const std::vector<double> b = to_modes(v);
  return inner_modes(a, b);
}

double EnergyModel::norm_sq(const Field &u) const
{
  return inner(u, u);
}

EnergyBreakdown EnergyModel::energy(const Field &u) const
{
  if (!u.grid().same_as(grid()))
  {
    fail(ErrorCode::kGridMismatch, "field grid differs from energy model grid");
  }
  if (!u.all_finite())
  {
    fail(ErrorCode::kNonFinite, "energy of a field with non-finite values");
  }
  const std::vector<double> a = to_modes(u);
  const QuadraticParts parts = quadratic_parts(grid(), a, a);
  EnergyBreakdown e;
  e.dirichlet = parts.radial + parts.inv_r_sq;
  e.angular = params().inv_lambda_sq() * parts.angular;
  e.mass = params().q * parts.l2;
  e.potential = lp_norm_pow(u, params().p) / params().p;
  e.total = 0.5 * (e.dirichlet + e.angular + e.mass) - e.potential;
  return e;
}

Field EnergyModel::gradient(const Field &u) const
{
  Field g = u;
  g -= op_.solve(nonlinearity(u, params().p));
  return g;
}

double EnergyModel::derivative(const Field &u, const Field &v) const
{
  return inner(u, v) - l2_inner(nonlinearity(u, params().p), v);
}

double lambda_inner(const Field &u, const Field &v, const ModelParams &params)
{
  return EnergyModel(u.grid_ptr(), params).inner(u, v);
}

double lambda_norm_sq(const Field &u, const ModelParams &params)
{
  return EnergyModel(u.grid_ptr(), params).norm_sq(u);
}

EnergyBreakdown energy(const Field &u, const ModelParams &params)
{
  return EnergyModel(u.grid_ptr(), params).energy(u);
}

Field gradient(const Field &u, const ModelParams &params)
{
  return EnergyModel(u.grid_ptr(), params).gradient(u);
}

Field nonlinearity(const Field &u, double p)
{
  Field out(u.grid_ptr());
  kernels::signed_power(u.values(), p - 1.0, out.values());
  return out;
}

double lp_norm_pow(const Field &u, double p)
{
  const PolarGrid &g = u.grid();
  return g.angular_weight() *
         kernels::weighted_abs_pow(u.values(), p, g.ntheta(), g.radial_weights());
}

double l2_inner(const Field &u, const Field &v)
{
  check_same_grid(u, v);
  const PolarGrid &g = u.grid();
  return g.angular_weight() *
         kernels::weighted_dot(u.values(), v.values(), g.ntheta(), g.radial_weights());
}

double h1_norm(const Field &u)
{
  const std::vector<double> a = to_modes(u);
  const QuadraticParts parts = quadratic_parts(u.grid(), a, a);
  return std::sqrt(parts.radial + parts.inv_r_sq + parts.l2);
}

}  // namespace spiralnls
