// SPDX-License-Identifier: Apache-2.0

#include "spiralnls/nehari.hpp"

#include <algorithm>
#include <cmath>

#include "spiralnls/errors.hpp"

namespace spiralnls
{

Field positive_part(const Field &u)
{
  Field out = u;
  for (double &x : out.values())
  {
    x = std::max(x, 0.0);
  }
  return out;
}

Field negative_part(const Field &u)
{
  Field out = u;
  for (double &x : out.values())
  {
    x = std::min(x, 0.0);
  }
  return out;
}

double nehari_scale(const EnergyModel &model, const Field &u)
{
  const double quad = model.norm_sq(u);
  const double lp = lp_norm_pow(u, model.params().p);
  if (!(quad > 0.0) || !(lp > 0.0))
  {
    fail(ErrorCode::kZeroField, "cannot scale the zero field onto the Nehari set");
  }
  return std::pow(quad / lp, 1.0 / (model.params().p - 2.0));
}

double nehari_scale(const Field &u, const ModelParams &params)
{
  return nehari_scale(EnergyModel(u.grid_ptr(), params), u);
}

NodalSplit nodal_split(const EnergyModel &model, const Field &u)
{
  const Field up = positive_part(u);
  const Field um = negative_part(u);
  const std::vector<double> a = to_modes(up);
  const std::vector<double> b = to_modes(um);
  const double p = model.params().p;
  NodalSplit s;
  s.plus_norm_sq = model.inner_modes(a, a);
  s.minus_norm_sq = model.inner_modes(b, b);
  s.cross = model.inner_modes(a, b);
  s.plus_lp = lp_norm_pow(up, p);
  s.minus_lp = lp_norm_pow(um, p);
  return s;
}

std::pair<double, double> nodal_coefficients(const NodalSplit &s, double p)
{
  if (!(s.plus_lp > 0.0) || !(s.minus_lp > 0.0))
  {
    fail(ErrorCode::kOnePhaseMissing, "nodal projection needs both a positive and a negative part");
  }
  const double e = p - 2.0;
  // Decoupled guess, then Newton on
  //   a A + b C = a^{p-1} P,   b B + a C = b^{p-1} M.
  double a = std::pow(s.plus_norm_sq / s.plus_lp, 1.0 / e);
  double b = std::pow(s.minus_norm_sq / s.minus_lp, 1.0 / e);
  const auto residual = [&](double x, double y, double &fa, double &fb)
  {
    fa = x * s.plus_norm_sq + y * s.cross - std::pow(x, p - 1.0) * s.plus_lp;
    fb = y * s.minus_norm_sq + x * s.cross - std::pow(y, p - 1.0) * s.minus_lp;
    return std::hypot(fa / (x * s.plus_norm_sq), fb / (y * s.minus_norm_sq));
  };
  double fa = 0.0, fb = 0.0;
  double res = residual(a, b, fa, fb);
  for (int it = 0; it < 100 && res > 1e-15; ++it)
  {
    const double j11 = s.plus_norm_sq - (p - 1.0) * std::pow(a, e) * s.plus_lp;
    const double j22 = s.minus_norm_sq - (p - 1.0) * std::pow(b, e) * s.minus_lp;
    const double det = j11 * j22 - s.cross * s.cross;
    if (!(std::abs(det) > 0.0))
    {
      break;
    }
    const double da = -(j22 * fa - s.cross * fb) / det;
    const double db = -(j11 * fb - s.cross * fa) / det;
    double t = 1.0;
    double na = a + da, nb = b + db;
    double nfa = 0.0, nfb = 0.0;
    double nres = (na > 0.0 && nb > 0.0) ? residual(na, nb, nfa, nfb) : INFINITY;
    while (!(nres < res) && t > 1e-8)
    {
      t *= 0.5;
      na = a + t * da;
      nb = b + t * db;
      nres = (na > 0.0 && nb > 0.0) ? residual(na, nb, nfa, nfb) : INFINITY;
    }
    if (!(nres < res))
    {
      break;
    }
    a = na;
    b = nb;
    fa = nfa;
    fb = nfb;
    res = nres;
  }
  if (!(res < 1e-10) || !std::isfinite(a) || !std::isfinite(b))
  {
    fail(ErrorCode::kOnePhaseMissing, "nodal projection has no positive solution");
  }
  return {a, b};
}

Field project_nodal(const EnergyModel &model, const Field &u)
{
  const auto [a, b] = nodal_coefficients(nodal_split(model, u), model.params().p);
  Field out = u;
  for (double &x : out.values())
  {
    x *= (x > 0.0) ? a : b;
  }
  return out;
}

Field project_nodal(const Field &u, const ModelParams &params)
{
  return project_nodal(EnergyModel(u.grid_ptr(), params), u);
}

NehariResidual manifold_residual(const EnergyModel &model, const Field &u)
{
  const NodalSplit s = nodal_split(model, u);
  const double norm_sq = s.plus_norm_sq + 2.0 * s.cross + s.minus_norm_sq;
  if (!(norm_sq > 0.0))
  {
    fail(ErrorCode::kZeroField, "Nehari residual of the zero field");
  }
  const double dplus = s.plus_norm_sq + s.cross - s.plus_lp;
  const double dminus = s.minus_norm_sq + s.cross - s.minus_lp;
  return {(dplus + dminus) / norm_sq, dplus / norm_sq, dminus / norm_sq};
}

NehariResidual manifold_residual(const Field &u, const ModelParams &params)
{
  return manifold_residual(EnergyModel(u.grid_ptr(), params), u);
}

std::pair<double, double> part_energies(const EnergyModel &model, const Field &u)
{
  const NodalSplit s = nodal_split(model, u);
  const double p = model.params().p;
  return {0.5 * (s.plus_norm_sq + s.cross) - s.plus_lp / p,
          0.5 * (s.minus_norm_sq + s.cross) - s.minus_lp / p};
}

}  // namespace spiralnls
