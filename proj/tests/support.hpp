// SPDX-License-Identifier: Apache-2.0
//
// Shared fixtures for the unit suites: seeded random fields and a few grids.

#pragma once

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "spiralnls/errors.hpp"
#include "spiralnls/polar_grid.hpp"

namespace spiralnls::testing
{

inline bool same_bits(double a, double b)
{
  return std::memcmp(&a, &b, sizeof a) == 0;
}

inline bool same_bits(std::span<const double> a, std::span<const double> b)
{
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

inline double rel_diff(double a, double b)
{
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// Smooth random field: low angular modes with random weights under a Gaussian
// envelope, so it vanishes (to round-off) well before r = R.
inline Field random_smooth_field(const GridPtr &grid, std::mt19937_64 &rng, int max_order = 3,
                                 double width = 0.3)
{
  std::normal_distribution<double> n01(0.0, 1.0);
  const int count = 2 * max_order + 1;
  std::vector<double> coef(count), rad(count);
  for (int i = 0; i < count; ++i)
  {
    coef[i] = n01(rng);
    rad[i] = 0.5 * n01(rng);
  }
  const double R = grid->radius();
  const bool periodic = grid->sector().periodic();
  const double alpha = grid->sector().half_angle;
  return Field::from_function(grid, [&](double r, double th)
  {
    const double s = r / (width * R);
    const double env = std::exp(-s * s);
    double v = 0.0;
    for (int i = 0; i < count; ++i)
    {
      const int m = (i + 1) / 2;
      double ang;
      if (periodic)
      {
        ang = (i == 0) ? 1.0 : (i % 2 == 1 ? std::cos(m * th) : std::sin(m * th));
      }
      else
      {
        ang = std::sin((i + 1) * std::numbers::pi * (th + alpha) / (2.0 * alpha));
      }
      v += coef[i] * (1.0 + rad[i] * s) * env * ang;
    }
    return v;
  });
}

// Independent values at every node (not smooth).
inline Field random_nodal_field(const GridPtr &grid, std::mt19937_64 &rng)
{
  std::normal_distribution<double> n01(0.0, 1.0);
  Field u(grid);
  for (double &v : u.values())
  {
    v = n01(rng);
  }
  return u;
}

// Removes the angular mean at every radius.
inline Field mean_free(const Field &u)
{
  const PolarGrid &g = u.grid();
  Field out = u;
  for (int j = 0; j < g.nr(); ++j)
  {
    double mean = 0.0;
    for (int k = 0; k < g.ntheta(); ++k)
    {
      mean += u.at(j, k);
    }
    mean /= g.ntheta();
    for (int k = 0; k < g.ntheta(); ++k)
    {
      out.at(j, k) -= mean;
    }
  }
  return out;
}

}  // namespace spiralnls::testing
