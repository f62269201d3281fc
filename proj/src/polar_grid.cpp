// SPDX-License-Identifier: Apache-2.0

#include "spiralnls/polar_grid.hpp"

#include <algorithm>
#include <cmath>

#include "spiralnls/errors.hpp"
#include "spiralnls/text.hpp"

namespace spiralnls
{

namespace
{

constexpr double kPi = std::numbers::pi;

}  // namespace

Sector Sector::full_disk()
{
  return Sector{SectorKind::kFullDisk, kPi};
}

Sector Sector::half_disk()
{
  return Sector{SectorKind::kHalfDisk, kPi / 2.0};
}

Sector Sector::cone(double alpha)
{
  require(alpha > 0.0 && alpha < kPi, "cone half-angle must lie in (0, pi)");
  return Sector{SectorKind::kCone, alpha};
}

Sector Sector::parse(std::string_view text)
{
  if (text == "full")
  {
    return full_disk();
  }
  if (text == "half")
  {
    return half_disk();
  }
  if (text.starts_with("cone:"))
  {
    const std::string_view rest = text.substr(5);
    return cone(parse_real(rest, "cone half-angle"));
  }
  fail(ErrorCode::kInvalidArgument,
       "unknown sector '" + std::string(text) + "' (expected full, half or cone:<alpha>)");
}

std::string Sector::name() const
{
  switch (kind)
  {
    case SectorKind::kFullDisk:
      return "full";
    case SectorKind::kHalfDisk:
      return "half";
    case SectorKind::kCone:
      return "cone:" + format_real(half_angle);
  }
  return "unknown";
}

void ModelParams::validate() const
{
  require(std::isfinite(p) && p > 2.0, "exponent p must exceed 2");
  require(q == 0.0 || q == 1.0, "coefficient q must be 0 or 1");
  require(std::isfinite(lambda) && lambda > 0.0, "pitch lambda must be positive");
}

//---------------------------------------------------------------------------//

PolarGrid::PolarGrid(double radius, int nr, int ntheta, Sector sector)
  : radius_(radius), nr_(nr), ntheta_(ntheta), sector_(sector), dr_(radius / nr)
{
  radii_.resize(nr_);
  faces_.resize(nr_ + 1);
  radial_weights_.resize(nr_);
  for (int j = 0; j < nr_; ++j)
  {
    radii_[j] = (j + 0.5) * dr_;
    radial_weights_[j] = radii_[j] * dr_;
  }
  for (int j = 0; j <= nr_; ++j)
  {
    faces_[j] = j * dr_;
  }
  faces_[nr_] = radius_;

  if (sector_.periodic())
  {
    build_full_basis();
  }
  else
  {
    build_sector_basis();
  }
}

void PolarGrid::build_full_basis()
{
  const int n = ntheta_;
  const int half = n / 2;
  angular_weight_ = 2.0 * kPi / n;
  angles_.resize(n);
  for (int k = 0; k < n; ++k)
  {
    angles_[k] = 2.0 * kPi * k / n;
  }

  // Basis ordering: 1, cos t, sin t, cos 2t, sin 2t, ..., cos (n/2) t.
  wavenumbers_.assign(n, 0.0);
  mode_weights_.assign(n, 0.0);
  mode_order_.assign(n, 0);
  forward_.assign(static_cast<std::size_t>(n) * n, 0.0);
  inverse_.assign(static_cast<std::size_t>(n) * n, 0.0);
  derivative_.assign(static_cast<std::size_t>(n) * n, 0.0);

  auto set_mode = [&](int i, int order, bool is_sine, double weight)
  {
    wavenumbers_[i] = order;
    mode_weights_[i] = weight;
    mode_order_[i] = order;
    for (int k = 0; k < n; ++k)
    {
      // Reduce the phase index so that multiples of pi/2 stay exact.
      const int phase = (order * k) % n;
      const double arg = 2.0 * kPi * phase / n;
      double c = std::cos(arg), s = std::sin(arg);
      if (4 * phase == n || 4 * phase == 3 * n)
      {
        c = 0.0;
      }
      if (2 * phase == n || phase == 0)
      {
        s = 0.0;
      }
      const double basis = is_sine ? s : c;
      const double dbasis = is_sine ? order * c : -order * s;
      const double norm = (order == 0 || order == half) ? 1.0 / n : 2.0 / n;
      forward_[static_cast<std::size_t>(i) * n + k] = norm * basis;
      inverse_[static_cast<std::size_t>(k) * n + i] = basis;
      derivative_[static_cast<std::size_t>(k) * n + i] = dbasis;
    }
  };

  set_mode(0, 0, false, 2.0 * kPi);
  for (int m = 1; m < half; ++m)
  {
    set_mode(2 * m - 1, m, false, kPi);
    set_mode(2 * m, m, true, kPi);
  }
  set_mode(n - 1, half, false, 2.0 * kPi);
}

void PolarGrid::build_sector_basis()
{
  const int n = ntheta_;
  const double alpha = sector_.half_angle;
  const double width = sector_.width();
  angular_weight_ = width / (n + 1);
  angles_.resize(n);
  for (int k = 0; k < n; ++k)
  {
    angles_[k] = -alpha + (k + 1) * width / (n + 1);
  }

  wavenumbers_.assign(n, 0.0);
  mode_weights_.assign(n, width / 2.0);
  mode_order_.assign(n, 0);
  forward_.assign(static_cast<std::size_t>(n) * n, 0.0);
  inverse_.assign(static_cast<std::size_t>(n) * n, 0.0);
  derivative_.assign(static_cast<std::size_t>(n) * n, 0.0);

  for (int i = 0; i < n; ++i)
  {
    const int m = i + 1;
    const double kappa = m * kPi / width;
    wavenumbers_[i] = kappa;
    mode_order_[i] = m;
    for (int k = 0; k < n; ++k)
    {
      const int phase = (m * (k + 1)) % (2 * (n + 1));
      const double arg = kPi * phase / (n + 1);
      double s = std::sin(arg), c = std::cos(arg);
      if (phase == 0 || phase == n + 1)
      {
        s = 0.0;
      }
      if (2 * phase == n + 1 || 2 * phase == 3 * (n + 1))
      {
        c = 0.0;
      }
      forward_[static_cast<std::size_t>(i) * n + k] = 2.0 / (n + 1) * s;
      inverse_[static_cast<std::size_t>(k) * n + i] = s;
      derivative_[static_cast<std::size_t>(k) * n + i] = kappa * c;
    }
  }
}

bool PolarGrid::same_as(const PolarGrid &other) const
{
  return this == &other || (radius_ == other.radius_ && nr_ == other.nr_ &&
                            ntheta_ == other.ntheta_ && sector_ == other.sector_);
}

double PolarGrid::integrate(std::span<const double> values) const
{
  double total = 0.0;
  for (int j = 0; j < nr_; ++j)
  {
    double row = 0.0;
    for (int k = 0; k < ntheta_; ++k)
    {
      row += values[index(j, k)];
    }
    total += radial_weights_[j] * row;
  }
  return total * angular_weight_;
}

GridPtr build_grid(double radius, int nr, int ntheta, Sector sector)
{
  require(std::isfinite(radius) && radius > 0.0, "grid radius must be positive");
  require(nr >= 2, "radial count must be at least 2");
  require(ntheta >= 4, "angular count must be at least 4");
  if (sector.periodic())
  {
    require(ntheta % 2 == 0, "full-disk angular count must be even");
  }
  if (sector.kind == SectorKind::kCone)
  {
    require(sector.half_angle > 0.0 && sector.half_angle < kPi,
            "cone half-angle must lie in (0, pi)");
  }
  return std::make_shared<const PolarGrid>(radius, nr, ntheta, sector);
}

//---------------------------------------------------------------------------//

Field::Field(GridPtr grid) : grid_(std::move(grid)), values_(grid_->size(), 0.0) {}

Field::Field(GridPtr grid, std::vector<double> values)
  : grid_(std::move(grid)), values_(std::move(values))
{
  require(values_.size() == grid_->size(), "field size does not match grid");
}

Field Field::from_function(GridPtr grid, const std::function<double(double, double)> &f)
{
  Field u(std::move(grid));
  const PolarGrid &g = u.grid();
  for (int j = 0; j < g.nr(); ++j)
  {
    for (int k = 0; k < g.ntheta(); ++k)
    {
      u.at(j, k) = f(g.radii()[j], g.angles()[k]);
    }
  }
  return u;
}

bool Field::all_finite() const
{
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

double Field::max_abs() const
{
  double m = 0.0;
  for (double x : values_)
  {
    m = std::max(m, std::abs(x));
  }
  return m;
}

double Field::min_value() const
{
  return *std::min_element(values_.begin(), values_.end());
}

double Field::max_value() const
{
  return *std::max_element(values_.begin(), values_.end());
}

Field &Field::operator+=(const Field &other)
{
  check_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i)
  {
    values_[i] += other.values_[i];
  }
  return *this;
}

Field &Field::operator-=(const Field &other)
{
  check_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i)
  {
    values_[i] -= other.values_[i];
  }
  return *this;
}

Field &Field::operator*=(double s)
{
  for (double &x : values_)
  {
    x *= s;
  }
  return *this;
}

Field &Field::axpy(double s, const Field &other)
{
  check_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i)
  {
    values_[i] += s * other.values_[i];
  }
  return *this;
}

void check_same_grid(const Field &a, const Field &b)
{
  if (!a.grid().same_as(b.grid()))
  {
    fail(ErrorCode::kGridMismatch, "fields live on different grids");
  }
}

//---------------------------------------------------------------------------//

std::vector<double> to_modes(const Field &u)
{
  const PolarGrid &g = u.grid();
  std::vector<double> coef(g.size());
  kernels::row_transform(u.values(), coef, g.nr(), g.forward_matrix(), g.ntheta(), g.modes());
  return coef;
}

Field from_modes(const GridPtr &grid, std::span<const double> coef)
{
  require(coef.size() == grid->size(), "mode array size does not match grid");
  Field u(grid);
  kernels::row_transform(coef, u.values(), grid->nr(), grid->inverse_matrix(), grid->modes(),
                         grid->ntheta());
  return u;
}

Field apply_angular_derivative(const Field &u)
{
  const PolarGrid &g = u.grid();
  const std::vector<double> coef = to_modes(u);
  Field du(u.grid_ptr());
  kernels::row_transform(coef, du.values(), g.nr(), g.derivative_matrix(), g.modes(),
                         g.ntheta());
  return du;
}

double angular_derivative_norm_sq(const Field &u)
{
  const std::vector<double> coef = to_modes(u);
  return quadratic_parts(u.grid(), coef, coef).angular;
}

QuadraticParts quadratic_parts(const PolarGrid &g, std::span<const double> a,
                               std::span<const double> b)
{
  const std::size_t modes = g.modes();
  const int nr = g.nr();
  const double dr = g.dr();
  auto radii = g.radii();
  auto faces = g.faces();
  auto w = g.radial_weights();
  QuadraticParts parts;
  for (std::size_t m = 0; m < modes; ++m)
  {
    const double c = g.mode_weights()[m];
    const double kappa_sq = g.wavenumbers()[m] * g.wavenumbers()[m];
    double radial = 0.0, inv_r = 0.0, l2 = 0.0;
    for (int j = 0; j < nr; ++j)
    {
      const std::size_t i = static_cast<std::size_t>(j) * modes + m;
      if (j + 1 < nr)
      {
        radial += faces[j + 1] * (a[i + modes] - a[i]) * (b[i + modes] - b[i]) / dr;
      }
      else
      {
        // Half cell to the Dirichlet boundary, u(R) = 0.
        radial += 2.0 * faces[nr] * a[i] * b[i] / dr;
      }
      inv_r += w[j] / (radii[j] * radii[j]) * a[i] * b[i];
      l2 += w[j] * a[i] * b[i];
    }
    parts.radial += c * radial;
    parts.inv_r_sq += c * kappa_sq * inv_r;
    parts.angular += c * kappa_sq * l2;
    parts.l2 += c * l2;
  }
  return parts;
}

//---------------------------------------------------------------------------//

PolarOperator::PolarOperator(GridPtr grid, const ModelParams &params)
  : grid_(std::move(grid)), params_(params), bank_(grid_->nr(), grid_->modes())
{
  params_.validate();
  const PolarGrid &g = *grid_;
  const std::size_t modes = g.modes();
  const int nr = g.nr();
  const double dr2 = g.dr() * g.dr();
  const double inv_lambda_sq = params_.inv_lambda_sq();
  auto radii = g.radii();
  auto faces = g.faces();
  for (int j = 0; j < nr; ++j)
  {
    const double scale = 1.0 / (radii[j] * dr2);
    const double inner = faces[j];
    // The last cell couples to the antisymmetric ghost, doubling the face term.
    const double outer = (j + 1 < nr) ? faces[j + 1] : 2.0 * faces[nr];
    for (std::size_t m = 0; m < modes; ++m)
    {
      const std::size_t i = static_cast<std::size_t>(j) * modes + m;
      const double kappa_sq = g.wavenumbers()[m] * g.wavenumbers()[m];
      bank_.lower[i] = j > 0 ? -inner * scale : 0.0;
      bank_.upper[i] = j + 1 < nr ? -faces[j + 1] * scale : 0.0;
      bank_.diag[i] = (inner + outer) * scale +
                      kappa_sq * (inv_lambda_sq + 1.0 / (radii[j] * radii[j])) + params_.q;
    }
  }
  if (!bank_.factorize())
  {
    fail(ErrorCode::kLinearSolveFailure, "singular per-mode radial operator");
  }
}

void PolarOperator::apply_modes(std::span<const double> coef, std::span<double> out) const
{
  kernels::tridiag_apply(bank_, coef, out);
}

void PolarOperator::solve_modes(std::span<const double> rhs, std::span<double> out) const
{
  kernels::tridiag_solve(bank_, rhs, out);
}

Field PolarOperator::apply(const Field &u) const
{
  if (!u.grid().same_as(*grid_))
  {
    fail(ErrorCode::kGridMismatch, "operator and field grids differ");
  }
  const std::vector<double> coef = to_modes(u);
  std::vector<double> out(coef.size());
  apply_modes(coef, out);
  return from_modes(u.grid_ptr(), out);
}

Field PolarOperator::solve(const Field &f) const
{
  if (!f.grid().same_as(*grid_))
  {
    fail(ErrorCode::kGridMismatch, "operator and field grids differ");
  }
  const std::vector<double> coef = to_modes(f);
  std::vector<double> out(coef.size());
  solve_modes(coef, out);
  Field x = from_modes(f.grid_ptr(), out);
  if (!x.all_finite())
  {
    fail(ErrorCode::kLinearSolveFailure, "per-mode solve produced non-finite values");
  }
  return x;
}

Field apply_operator(const Field &u, const ModelParams &params)
{
  return PolarOperator(u.grid_ptr(), params).apply(u);
}

//---------------------------------------------------------------------------//

FieldInterpolant::FieldInterpolant(const Field &u) : grid_(u.grid_ptr())
{
  const PolarGrid &g = *grid_;
  const std::size_t modes = g.modes();
  const int nr = g.nr();
  const std::vector<double> coef = to_modes(u);
  extended_.assign(static_cast<std::size_t>(nr + 4) * modes, 0.0);
  for (int j = 0; j < nr; ++j)
  {
    std::copy_n(coef.begin() + static_cast<std::ptrdiff_t>(j * modes), modes,
                extended_.begin() + static_cast<std::ptrdiff_t>((j + 2) * modes));
  }
  for (std::size_t m = 0; m < modes; ++m)
  {
    // Reflection through the origin: a mode of integer order n picks up (-1)^n
    // (full disk, and the half disk where the sine modes have integer order);
    // cone modes behave like r^kappa with non-integer kappa, so the ghost is odd.
    double parity = -1.0;
    if (g.sector().periodic())
    {
      parity = (g.mode_order(m) % 2 == 0) ? 1.0 : -1.0;
    }
    else if (g.sector().kind == SectorKind::kHalfDisk)
    {
      parity = (static_cast<int>(m) % 2 == 0) ? -1.0 : 1.0;  // order m + 1
    }
    extended_[1 * modes + m] = parity * coef[0 * modes + m];
    extended_[0 * modes + m] = parity * coef[(nr > 1 ? 1 : 0) * modes + m];
    // Antisymmetry about r = R.
    extended_[(nr + 2) * modes + m] = -coef[(nr - 1) * modes + m];
    extended_[(nr + 3) * modes + m] = -coef[(nr > 1 ? nr - 2 : nr - 1) * modes + m];
  }
}

std::vector<double> FieldInterpolant::modes_at(double r) const
{
  const PolarGrid &g = *grid_;
  const std::size_t modes = g.modes();
  if (!(r >= 0.0) || r > g.radius() * (1.0 + 1e-12))
  {
    fail(ErrorCode::kInterpolationOutOfRange, "radius outside [0, R]");
  }
  // Position in units of dr relative to node 0 at r = dr/2; extended index is +2.
  const double s = r / g.dr() - 0.5;
  int base = static_cast<int>(std::floor(s));
  base = std::clamp(base, -1, g.nr() - 1);
  const double t = s - base;
  // Cubic Lagrange weights on nodes base-1, base, base+1, base+2.
  const double w0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
  const double w1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  const double w2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
  const double w3 = (t + 1.0) * t * (t - 1.0) / 6.0;
  std::vector<double> out(modes);
  const std::size_t e = static_cast<std::size_t>(base + 2);
  for (std::size_t m = 0; m < modes; ++m)
  {
    out[m] = w0 * extended_[(e - 1) * modes + m] + w1 * extended_[e * modes + m] +
             w2 * extended_[(e + 1) * modes + m] + w3 * extended_[(e + 2) * modes + m];
  }
  return out;
}

double FieldInterpolant::operator()(double r, double theta) const
{
  const PolarGrid &g = *grid_;
  const std::vector<double> c = modes_at(r);
  const std::size_t modes = g.modes();
  double value = 0.0;
  if (g.sector().periodic())
  {
    for (std::size_t m = 0; m < modes; ++m)
    {
      const int order = g.mode_order(m);
      const bool is_sine = (m > 0) && (m % 2 == 0) && (m + 1 != modes);
      value += c[m] * (is_sine ? std::sin(order * theta) : std::cos(order * theta));
    }
    return value;
  }
  const double alpha = g.sector().half_angle;
  // Wrap to (-pi, pi] before testing sector membership.
  double th = std::remainder(theta, 2.0 * kPi);
  if (std::abs(th) >= alpha)
  {
    return 0.0;
  }
  for (std::size_t m = 0; m < modes; ++m)
  {
    value += c[m] * std::sin(g.wavenumbers()[m] * (th + alpha));
  }
  return value;
}

Field odd_extend_half_disk(const Field &u)
{
  const PolarGrid &g = u.grid();
  require(g.sector().kind == SectorKind::kHalfDisk, "odd extension needs a half-disk field");
  const int n = g.ntheta();
  const int n_full = 2 * (n + 1);
  GridPtr full = build_grid(g.radius(), g.nr(), n_full, Sector::full_disk());
  const std::vector<double> coef = to_modes(u);
  std::vector<double> full_coef(full->size(), 0.0);
  for (int j = 0; j < g.nr(); ++j)
  {
    for (int i = 0; i < n; ++i)
    {
      // sin(m (theta + pi/2)) = cos(m pi/2) sin(m theta) + sin(m pi/2) cos(m theta)
      const int m = i + 1;
      const double c = coef[static_cast<std::size_t>(j) * n + i];
      const std::size_t row = static_cast<std::size_t>(j) * n_full;
      if (m % 2 == 1)
      {
        const double sign = ((m - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
        full_coef[row + 2 * m - 1] += sign * c;
      }
      else
      {
        const double sign = (m / 2) % 2 == 0 ? 1.0 : -1.0;
        full_coef[row + 2 * m] += sign * c;
      }
    }
  }
  return from_modes(full, full_coef);
}

}  // namespace spiralnls
