// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "spiralnls/polar_grid.hpp"

namespace spiralnls
{

// Angular mean at each radius. Full disk only.
Field radial_average(const Field &u);

// |u - u#|_lambda / |u|_lambda. Full disk only; exactly 0 for radial fields.
double nonradiality(const Field &u, const ModelParams &params);

struct WirtingerCheck
{
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

// Full disk: |u|_2^2 <= |d_theta u|_2^2 + |u#|_2^2.
// Sectors:   |u|_2 <= (2 alpha / pi) |d_theta u|_2.
WirtingerCheck check_wirtinger(const Field &u);

// On sectors: every radial row is nonincreasing in |theta| up to slack * |u|_inf.
bool angular_monotone(const Field &u, double slack = 1e-8);

// (1 / ((p - 1) |u|_inf^{p-2}))^{1/2}
double radiality_threshold(double linf, double p);

struct SymmetryReport
{
  std::optional<double> nonradiality;  // full disk only
  double linf = 0.0;
  double radiality_threshold = 0.0;
  bool below_threshold = false;
  std::optional<bool> angular_monotone;  // sectors only
  bool wirtinger_ok = false;
};

SymmetryReport symmetry_report(const Field &u, const ModelParams &params);

// sigma = (p - 2) rho / (2 (rho - 1)) + 1 with rho = q / (2 r).
double moser_exponent(double p, double r_param, double q_exponent);

}  // namespace spiralnls
