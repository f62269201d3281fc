// SPDX-License-Identifier: Apache-2.0
//
// Radial solutions of -w'' - w'/r + w = |w|^{p-2} w on [0, inf), w'(0) = 0,
// computed by shooting on the central amplitude. Independent of the 2D solver.

#pragma once

#include <string>
#include <vector>

namespace spiralnls
{

struct RadialOptions
{
  double r_max = 40.0;       // profile support [0, r_max]
  double step = 0.01;        // output spacing and maximum integrator step
  double rtol = 1e-12;       // integrator local error tolerance
  double start = 1e-6;       // series start radius
  int bisection_iters = 200;

  void validate() const;
};

enum class ProfileKind
{
  kGround,
  kNodal,
};

struct RadialProfile
{
  ProfileKind kind = ProfileKind::kGround;
  int zeros = 0;
  double p = 4.0;
  double amplitude = 0.0;      // w(0)
  double match_radius = 0.0;   // beyond this the profile is the Bessel K0 tail
  std::vector<double> radii;   // uniform, radii[0] = 0
  std::vector<double> values;
  std::vector<double> derivatives;

  // 2 pi int_0^R (.) r dr, Simpson rule
  double gradient_sq = 0.0;    // int |w'|^2
  double mass = 0.0;           // int w^2
  double lp = 0.0;             // int |w|^p
  double energy = 0.0;         // (gradient_sq + mass)/2 - lp/p

  // Cubic Hermite interpolation; zero beyond the last radius.
  double value_at(double r) const;
  double derivative_at(double r) const;

  std::string to_csv() const;
};

RadialProfile shoot_ground(double p, const RadialOptions &opts = {});
// Profile with exactly `zeros` sign changes, starting positive.
RadialProfile shoot_nodal(double p, int zeros, const RadialOptions &opts = {});

struct LimitLevels
{
  double c_inf = 0.0;                // energy of the positive ground state
  double radial_nodal_energy = 0.0;  // energy of the one-zero radial solution
  double eps_star = 0.0;             // radial_nodal_energy - 2 c_inf
};

LimitLevels limit_levels(double p, const RadialOptions &opts = {});

}  // namespace spiralnls
