// SPDX-License-Identifier: Apache-2.0
//
// Screw-invariant fields on R^3 built from a planar profile:
//   v(r, phi, t) = u(r, phi - t / lambda),
// so v is invariant under (x, t) -> (R_theta x, t + lambda theta) and 2 pi lambda
// periodic in t. Half-disk profiles are odd-extended in the angular basis first.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "spiralnls/polar_grid.hpp"

namespace spiralnls
{

struct SpiralField3D
{
  int nx = 0;
  int ny = 0;
  int nt = 0;
  std::array<double, 3> origin{};
  std::array<double, 3> spacing{};
  std::vector<double> values;  // x fastest, then y, then t

  std::size_t index(int ix, int iy, int it) const
  {
    return (static_cast<std::size_t>(it) * ny + iy) * nx + ix;
  }
  // Throws InvalidArgument on inconsistent counts or nonpositive spacing.
  void validate() const;
};

// Pointwise evaluation of v. Works for any full-disk or half-disk profile.
class SpiralEvaluator
{
public:
  SpiralEvaluator(const Field &u, double lambda);

  // Throws InterpolationOutOfRange when x^2 + y^2 > R^2.
  double operator()(double x, double y, double t) const;
  double period() const;
  double radius() const { return full_.grid().radius(); }

private:
  Field full_;
  FieldInterpolant interp_;
  double lambda_;
};

// Samples an nx = ny = samples lattice on the square of half-width R / sqrt(2)
// (the largest one inside the disk) and nt times t_k = k * 2 pi lambda / nt.
SpiralField3D reconstruct3d(const Field &u, const ModelParams &params, int nt, int samples);

// Point of the zero set of the odd-extended profile at distance s from the
// axis and parameter tau: (-s sin tau, s cos tau, lambda tau).
std::array<double, 3> helicoid_point(double s, double tau, double lambda);

// Legacy ASCII STRUCTURED_POINTS, one scalar "v" per line at 12 significant digits.
std::string vtk_text(const SpiralField3D &f);
void export_vtk(const SpiralField3D &f, const std::string &path);
// Minimal reader for files written by export_vtk.
SpiralField3D read_vtk(const std::string &path);

}  // namespace spiralnls
