// SPDX-License-Identifier: Apache-2.0
//
// Truncated polar discretization of disk-like domains.
//
// Radial nodes are staggered, r_j = (j + 1/2) R / Nr, so no unknown sits on the
// coordinate singularity. Homogeneous Dirichlet data at r = R is imposed
// through an antisymmetric ghost value. In the angle the field is represented
// spectrally: a real Fourier series on the full disk and a sine series on
// Dirichlet sectors |theta| < alpha. Both transforms are square and satisfy a
// discrete Parseval identity with the trapezoid weights, so radial averaging
// and the angular Wirtinger inequalities hold exactly on the grid.

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spiralnls/kernels.hpp"

namespace spiralnls
{

enum class SectorKind
{
  kFullDisk,
  kHalfDisk,
  kCone,
};

struct Sector
{
  SectorKind kind = SectorKind::kFullDisk;
  // Opening half-angle alpha: the sector is |theta| < alpha.
  double half_angle = std::numbers::pi;

  static Sector full_disk();
  static Sector half_disk();
  static Sector cone(double alpha);
  // Accepts "full", "half" and "cone:<alpha>".
  static Sector parse(std::string_view text);

  bool periodic() const { return kind == SectorKind::kFullDisk; }
  double width() const { return 2.0 * half_angle; }
  std::string name() const;

  bool operator==(const Sector &other) const = default;
};

// Exponent p > 2, zero-order coefficient q in {0, 1} and pitch lambda > 0.
struct ModelParams
{
  double p = 4.0;
  double q = 1.0;
  double lambda = 1.0;

  void validate() const;
  double inv_lambda_sq() const { return 1.0 / (lambda * lambda); }
};

class PolarGrid
{
public:
  PolarGrid(double radius, int nr, int ntheta, Sector sector);

  double radius() const { return radius_; }
  int nr() const { return nr_; }
  int ntheta() const { return ntheta_; }
  const Sector &sector() const { return sector_; }
  double dr() const { return dr_; }
  std::size_t size() const { return static_cast<std::size_t>(nr_) * ntheta_; }
  std::size_t modes() const { return static_cast<std::size_t>(ntheta_); }

  std::span<const double> radii() const { return radii_; }
  // Cell faces r_{j - 1/2}, j = 0..Nr; faces()[0] = 0 and faces()[Nr] = R.
  std::span<const double> faces() const { return faces_; }
  std::span<const double> angles() const { return angles_; }
  // r_j * dr, the radial factor of the area element.
  std::span<const double> radial_weights() const { return radial_weights_; }
  // Trapezoid weight in theta.
  double angular_weight() const { return angular_weight_; }

  // Angular wavenumber of each basis function (|d/dtheta| eigenvalue).
  std::span<const double> wavenumbers() const { return wavenumbers_; }
  // Discrete Parseval weights: h sum_k u_k v_k = sum_m weight_m u^_m v^_m.
  std::span<const double> mode_weights() const { return mode_weights_; }
  // Integer Fourier order of each basis function on the full disk.
  int mode_order(std::size_t m) const { return mode_order_[m]; }

  std::span<const double> forward_matrix() const { return forward_; }
  std::span<const double> inverse_matrix() const { return inverse_; }
  std::span<const double> derivative_matrix() const { return derivative_; }

  // Structural equality (same discretization).
  bool same_as(const PolarGrid &other) const;

  // Quadrature of nodal values over the domain.
  double integrate(std::span<const double> values) const;

  std::size_t index(int j, int k) const { return static_cast<std::size_t>(j) * ntheta_ + k; }

private:
  void build_full_basis();
  void build_sector_basis();

  double radius_;
  int nr_;
  int ntheta_;
  Sector sector_;
  double dr_;
  double angular_weight_;
  std::vector<double> radii_, faces_, angles_, radial_weights_;
  std::vector<double> wavenumbers_, mode_weights_;
  std::vector<int> mode_order_;
  std::vector<double> forward_, inverse_, derivative_;
};

using GridPtr = std::shared_ptr<const PolarGrid>;

// Minimums: R > 0, Nr >= 2, Ntheta >= 4, Ntheta even on the full disk.
GridPtr build_grid(double radius, int nr, int ntheta, Sector sector);

class Field
{
public:
  explicit Field(GridPtr grid);
  Field(GridPtr grid, std::vector<double> values);

  static Field from_function(GridPtr grid, const std::function<double(double, double)> &f);

  const GridPtr &grid_ptr() const { return grid_; }
  const PolarGrid &grid() const { return *grid_; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::vector<double> &storage() { return values_; }

  double &at(int j, int k) { return values_[grid_->index(j, k)]; }
  double at(int j, int k) const { return values_[grid_->index(j, k)]; }

  bool all_finite() const;
  double max_abs() const;
  double min_value() const;
  double max_value() const;

  Field &operator+=(const Field &other);
  Field &operator-=(const Field &other);
  Field &operator*=(double s);
  // this += s * other
  Field &axpy(double s, const Field &other);

  friend Field operator+(Field a, const Field &b) { return a += b; }
  friend Field operator-(Field a, const Field &b) { return a -= b; }
  friend Field operator*(double s, Field a) { return a *= s; }
  friend Field operator*(Field a, double s) { return a *= s; }

private:
  GridPtr grid_;
  std::vector<double> values_;
};

void check_same_grid(const Field &a, const Field &b);

// Angular spectral coefficients, stored (j, m) like nodal values.
std::vector<double> to_modes(const Field &u);
Field from_modes(const GridPtr &grid, std::span<const double> coef);

// Spectral d/dtheta evaluated at the nodes.
Field apply_angular_derivative(const Field &u);

// |d_theta u|_2^2 computed in mode space (includes the Nyquist mode).
double angular_derivative_norm_sq(const Field &u);

// Bilinear pieces of the quadratic form, evaluated from mode coefficients:
//   radial     = int u_r v_r
//   inv_r_sq   = int (1/r^2) d_theta u d_theta v
//   angular    = int d_theta u d_theta v
//   l2         = int u v
struct QuadraticParts
{
  double radial = 0.0;
  double inv_r_sq = 0.0;
  double angular = 0.0;
  double l2 = 0.0;
};
QuadraticParts quadratic_parts(const PolarGrid &grid, std::span<const double> a_modes,
                               std::span<const double> b_modes);

// The linear operator -u_rr - u_r/r - (1/lambda^2 + 1/r^2) u_thetatheta + q u,
// diagonal in angular modes and tridiagonal in r within each mode.
class PolarOperator
{
public:
  PolarOperator(GridPtr grid, const ModelParams &params);

  const PolarGrid &grid() const { return *grid_; }
  const GridPtr &grid_ptr() const { return grid_; }
  const ModelParams &params() const { return params_; }

  void apply_modes(std::span<const double> coef, std::span<double> out) const;
  void solve_modes(std::span<const double> rhs, std::span<double> out) const;

  Field apply(const Field &u) const;
  // L^{-1} f
  Field solve(const Field &f) const;

private:
  GridPtr grid_;
  ModelParams params_;
  kernels::TridiagonalBank bank_;
};

Field apply_operator(const Field &u, const ModelParams &params);

// Evaluates a field at arbitrary polar points: cubic Lagrange in r on the mode
// coefficients (ghost values carry the parity at the origin and the Dirichlet
// condition at R), spectral summation in theta.
class FieldInterpolant
{
public:
  explicit FieldInterpolant(const Field &u);

  // Throws InterpolationOutOfRange for r > R. Returns 0 outside a sector.
  double operator()(double r, double theta) const;
  // Radial interpolation of mode coefficients at radius r.
  std::vector<double> modes_at(double r) const;

private:
  GridPtr grid_;
  std::vector<double> extended_;  // (Nr + 4) x modes, two ghost rows each side
};

// Odd reflection of a half-disk field across x1 = 0, performed in the angular
// basis; returns a full-disk field on Ntheta_full = 2 (Ntheta + 1) angles.
Field odd_extend_half_disk(const Field &u);

}  // namespace spiralnls
