// SPDX-License-Identifier: Apache-2.0

#include "spiralnls/diagnostics.hpp"

#include <cmath>
#include <numbers>

#include "spiralnls/energy.hpp"
#include "spiralnls/errors.hpp"

namespace spiralnls
{

Field radial_average(const Field &u)
{
  const PolarGrid &g = u.grid();
  require(g.sector().periodic(), "radial average needs a full-disk grid");
  Field out(u.grid_ptr());
  const int nt = g.ntheta();
  for (int j = 0; j < g.nr(); ++j)
  {
    // Offsets from the first node keep radial rows exactly fixed.
    const double base = u.at(j, 0);
    double s = 0.0;
    for (int k = 0; k < nt; ++k)
    {
      s += u.at(j, k) - base;
    }
    const double mean = base + s / nt;
    for (int k = 0; k < nt; ++k)
    {
      out.at(j, k) = mean;
    }
  }
  return out;
}

double nonradiality(const Field &u, const ModelParams &params)
{
  const EnergyModel model(u.grid_ptr(), params);
  const double norm_sq = model.norm_sq(u);
  if (!(norm_sq > 0.0))
  {
    fail(ErrorCode::kZeroField, "nonradiality of the zero field");
  }
  const Field diff = u - radial_average(u);
  for (double x : diff.values())
  {
    if (x != 0.0)
    {
      return std::sqrt(std::max(model.norm_sq(diff), 0.0) / norm_sq);
    }
  }
  return 0.0;
}

WirtingerCheck check_wirtinger(const Field &u)
{
  const PolarGrid &g = u.grid();
  const std::vector<double> a = to_modes(u);
  const QuadraticParts parts = quadratic_parts(g, a, a);
  WirtingerCheck out;
  if (g.sector().periodic())
  {
    std::vector<double> mean(a.size(), 0.0);
    for (int j = 0; j < g.nr(); ++j)
    {
      mean[g.index(j, 0)] = a[g.index(j, 0)];
    }
    const double mean_sq = quadratic_parts(g, mean, mean).l2;
    out.lhs = parts.l2;
    out.rhs = parts.angular + mean_sq;
  }
  else
  {
    out.lhs = std::sqrt(parts.l2);
    out.rhs = 2.0 * g.sector().half_angle / std::numbers::pi * std::sqrt(parts.angular);
  }
  out.ok = out.lhs <= out.rhs * (1.0 + 1e-12) + 1e-300;
  return out;
}

bool angular_monotone(const Field &u, double slack)
{
  const PolarGrid &g = u.grid();
  require(!g.sector().periodic(), "angular monotonicity is defined on sectors");
  const double tol = slack * u.max_abs();
  const int nt = g.ntheta();
  const auto angles = g.angles();
  for (int j = 0; j < g.nr(); ++j)
  {
    for (int k = 0; k + 1 < nt; ++k)
    {
      const double a = u.at(j, k), b = u.at(j, k + 1);
      // Nodes are symmetric about 0; compare toward the centre.
      if (angles[k + 1] <= 0.0 && b + tol < a)
      {
        return false;
      }
      if (angles[k] >= 0.0 && a + tol < b)
      {
        return false;
      }
    }
  }
  return true;
}

double radiality_threshold(double linf, double p)
{
  require(linf > 0.0, "radiality threshold needs a nonzero field");
  return std::sqrt(1.0 / ((p - 1.0) * std::pow(linf, p - 2.0)));
}

SymmetryReport symmetry_report(const Field &u, const ModelParams &params)
{
  SymmetryReport rep;
  rep.linf = u.max_abs();
  if (rep.linf > 0.0)
  {
    rep.radiality_threshold = radiality_threshold(rep.linf, params.p);
    rep.below_threshold = params.lambda < rep.radiality_threshold;
  }
  if (u.grid().sector().periodic())
  {
    if (rep.linf > 0.0)
    {
      rep.nonradiality = nonradiality(u, params);
    }
  }
  else
  {
    rep.angular_monotone = angular_monotone(u);
  }
  rep.wirtinger_ok = check_wirtinger(u.grid().sector().periodic() ? u - radial_average(u) : u).ok;
  return rep;
}

double moser_exponent(double p, double r_param, double q_exponent)
{
  require(p > 2.0, "moser exponent needs p > 2");
  require(r_param > 1.0, "moser exponent needs r > 1");
  require((p - 2.0) * r_param / (r_param - 1.0) >= 2.0, "moser exponent needs (p-2) r/(r-1) >= 2");
  require(q_exponent > 4.0 * r_param, "moser exponent needs q > 4 r");
  const double rho = q_exponent / (2.0 * r_param);
  return (p - 2.0) * rho / (2.0 * (rho - 1.0)) + 1.0;
}

}  // namespace spiralnls
