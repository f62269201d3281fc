// SPDX-License-Identifier: Apache-2.0

#include "spiralnls/studies.hpp"

#include <algorithm>
#include <cmath>

#include "spiralnls/errors.hpp"

namespace spiralnls
{

const char *to_string(NodalWinner w)
{
  return w == NodalWinner::kRadialNodal ? "radial-nodal" : "dipole";
}

namespace
{

void require_increasing(const std::vector<double> &xs, const char *what)
{
  require(!xs.empty(), std::string(what) + " list must be nonempty");
  for (std::size_t i = 0; i < xs.size(); ++i)
  {
    require(xs[i] > 0.0 && std::isfinite(xs[i]), std::string(what) + " values must be positive");
    if (i > 0)
    {
      require(xs[i] > xs[i - 1], std::string(what) + " list must be increasing");
    }
  }
}

SolveConfig with_seed(const SolveConfig &cfg, SeedKind kind, double scale = 1.0)
{
  SolveConfig out = cfg;
  out.seed_kind = kind;
  out.custom_seed.reset();
  out.seed_scale = scale;
  return out;
}

}  // namespace

std::vector<SweepRecord> sweep_lambda(const ModelParams &base, const std::vector<double> &lambdas,
                                      const SweepGrids &grids, const SolveConfig &cfg)
{
  require_increasing(lambdas, "lambda");
  require(base.q == 1.0, "lambda sweeps use q = 1");
  require(grids.full && grids.full->sector().periodic(), "sweep needs a full-disk grid");
  require(grids.half && grids.half->sector().kind == SectorKind::kHalfDisk,
          "sweep needs a half-disk grid");

  std::vector<SweepRecord> records(lambdas.size());
  const int n = static_cast<int>(lambdas.size());
  // Records are independent; nested kernel regions run serially inside.
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i)
  {
    SweepRecord &rec = records[i];
    rec.lambda = lambdas[i];
    ModelParams params = base;
    params.lambda = lambdas[i];
    try
    {
      const SolveReport ground = solve_ground(grids.full, params, with_seed(cfg, SeedKind::kRadial));
      const SolveReport sector = solve_ground(grids.half, params, with_seed(cfg, SeedKind::kRadial));
      const SolveReport dipole = solve_nodal(grids.full, params, with_seed(cfg, SeedKind::kDipole));
      const SolveReport radial =
          solve_nodal(grids.full, params, with_seed(cfg, SeedKind::kRadialNodal));
      rec.alpha_hat = ground.energy.total;
      rec.c_hat = sector.energy.total;
      rec.beta_dipole = dipole.energy.total;
      rec.beta_radial_nodal = radial.energy.total;
      const SolveReport &best = dipole.energy.total < radial.energy.total ? dipole : radial;
      rec.beta_hat = best.energy.total;
      rec.nonradiality = best.nonradiality.value_or(0.0);
      rec.winner = rec.nonradiality < kRadialThreshold ? NodalWinner::kRadialNodal : NodalWinner::kDipole;
      rec.tau = peak_location(sector.field);
      rec.converged = ground.converged && sector.converged && dipole.converged && radial.converged;
    }
    catch (const Error &e)
    {
      rec.error = e.what();
    }
  }
  return records;
}

LambdaBracket bracket(const std::vector<SweepRecord> &records)
{
  LambdaBracket out;
  std::optional<NodalWinner> prev;
  for (const SweepRecord &r : records)
  {
    if (!r.error.empty())
    {
      continue;
    }
    if (r.winner == NodalWinner::kRadialNodal)
    {
      out.last_radial = r.lambda;
    }
    else if (!out.first_dipole)
    {
      out.first_dipole = r.lambda;
    }
    if (prev && *prev != r.winner)
    {
      ++out.transitions;
    }
    prev = r.winner;
  }
  return out;
}

double peak_location(const Field &u, double margin)
{
  const PolarGrid &g = u.grid();
  require(!g.sector().periodic(), "peak location is measured on sector grids");
  const std::vector<double> coef = to_modes(u);
  const std::size_t modes = g.modes();
  const double alpha = g.sector().half_angle;
  std::vector<double> basis(modes);
  for (std::size_t m = 0; m < modes; ++m)
  {
    basis[m] = std::sin(g.wavenumbers()[m] * alpha);
  }
  std::vector<double> axis(g.nr());
  for (int j = 0; j < g.nr(); ++j)
  {
    double s = 0.0;
    for (std::size_t m = 0; m < modes; ++m)
    {
      s += coef[j * modes + m] * basis[m];
    }
    axis[j] = s;
  }
  const int jmax = static_cast<int>(std::max_element(axis.begin(), axis.end()) - axis.begin());
  if (jmax == 0 || jmax == g.nr() - 1)
  {
    fail(ErrorCode::kPeakAtBoundary, "maximum on the axis sits at the first or last radial node");
  }
  const double fm = axis[jmax - 1], f0 = axis[jmax], fp = axis[jmax + 1];
  const double curv = fm - 2.0 * f0 + fp;
  const double shift = curv < 0.0 ? 0.5 * (fm - fp) / curv : 0.0;
  const double tau = g.radii()[jmax] + shift * g.dr();
  if (tau > g.radius() - margin)
  {
    fail(ErrorCode::kPeakAtBoundary, "peak within the boundary margin; enlarge the radius");
  }
  return tau;
}

double recentered_h1_gap(const Field &u, const RadialProfile &w, double tau)
{
  const PolarGrid &g = u.grid();
  const double p = w.p;
  std::vector<double> prod(g.size());
  for (int j = 0; j < g.nr(); ++j)
  {
    const double r = g.radii()[j];
    for (int k = 0; k < g.ntheta(); ++k)
    {
      const double th = g.angles()[k];
      const double dist = std::hypot(r * std::cos(th) - tau, r * std::sin(th));
      const double wv = w.value_at(dist);
      prod[g.index(j, k)] = u.at(j, k) * std::copysign(std::pow(std::abs(wv), p - 1.0), wv);
    }
  }
  // <u, w_tau>_{H^1} = int u w_tau^{p-1}, since w_tau solves the limit equation
  // and u vanishes on the boundary.
  const double cross = g.integrate(prod);
  const double un = h1_norm(u);
  const double gap_sq = un * un - 2.0 * cross + (w.gradient_sq + w.mass);
  return std::sqrt(std::max(gap_sq, 0.0));
}

std::vector<InfinityRecord> asymptotics_infinity(const ModelParams &params,
                                                 const std::vector<double> &lambdas,
                                                 const GridPtr &grid, const SolveConfig &cfg,
                                                 const RadialProfile &w)
{
  require_increasing(lambdas, "lambda");
  require(params.q == 1.0, "large-pitch asymptotics use q = 1");
  require(grid && grid->sector().kind == SectorKind::kHalfDisk, "large-pitch study needs a half-disk grid");
  require(w.kind == ProfileKind::kGround && w.p == params.p, "reference profile must be the ground state for p");
  const double w_norm = std::sqrt(w.gradient_sq + w.mass);
  std::vector<InfinityRecord> out(lambdas.size());
  const int n = static_cast<int>(lambdas.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i)
  {
    InfinityRecord &rec = out[i];
    rec.lambda = lambdas[i];
    ModelParams mp = params;
    mp.lambda = lambdas[i];
    try
    {
      const SolveReport rep = solve_ground(grid, mp, with_seed(cfg, SeedKind::kRadial));
      rec.energy = rep.energy.total;
      rec.converged = rep.converged;
      rec.tau = peak_location(rep.field);
      rec.tau_over_lambda = rec.tau / rec.lambda;
      rec.h1_gap = recentered_h1_gap(rep.field, w, rec.tau);
      rec.h1_gap_relative = rec.h1_gap / w_norm;
    }
    catch (const Error &e)
    {
      rec.error = e.what();
    }
  }
  return out;
}

double rescaled_level(const Field &v, double p, double mass)
{
  const EnergyBreakdown e = energy(v, ModelParams{p, 0.0, 1.0});
  return e.total + 0.5 * mass * l2_inner(v, v);
}

Field rescale_to_limit_grid(const Field &u, const GridPtr &limit_grid, double lambda, double p)
{
  const PolarGrid &g = u.grid();
  const PolarGrid &lg = *limit_grid;
  require(g.nr() == lg.nr() && g.ntheta() == lg.ntheta() && g.sector() == lg.sector(),
          "rescale needs grids with matching node counts and sector");
  const double rel = std::abs(g.radius() - lambda * lg.radius()) / g.radius();
  if (rel > 1e-12)
  {
    fail(ErrorCode::kGridMismatch, "rescale needs the solve radius to equal lambda times the limit radius");
  }
  // Nodes align under r -> lambda r, so the radial interpolation is the identity.
  const double factor = std::pow(lambda, 2.0 / (p - 2.0));
  Field v(limit_grid, std::vector<double>(u.values().begin(), u.values().end()));
  v *= factor;
  return v;
}

ZeroStudy asymptotics_zero(const ModelParams &params, const std::vector<double> &lambdas,
                           const GridPtr &grid, const SolveConfig &cfg)
{
  require(params.q == 1.0, "small-pitch rescaling uses q = 1");
  require(grid && !grid->sector().periodic(), "small-pitch rescaling needs a sector grid");
  require(!lambdas.empty(), "lambda list must be nonempty");
  for (std::size_t i = 0; i < lambdas.size(); ++i)
  {
    require(lambdas[i] > 0.0 && lambdas[i] <= 1.0, "small-pitch lambdas must lie in (0, 1]");
    if (i > 0)
    {
      require(lambdas[i] < lambdas[i - 1], "small-pitch lambda list must be decreasing");
    }
  }
  const double p = params.p;
  const ModelParams limit_params{p, 0.0, 1.0};

  ZeroStudy study;
  const SolveReport vstar = solve_ground(grid, limit_params, with_seed(cfg, SeedKind::kRadial));
  const int nr_large = static_cast<int>(std::lround(1.5 * grid->nr()));
  const GridPtr large = build_grid(grid->dr() * nr_large, nr_large, grid->ntheta(), grid->sector());
  const SolveReport vstar_large = solve_ground(large, limit_params, with_seed(cfg, SeedKind::kRadial));
  study.limit.energy = vstar.energy.total;
  study.limit.energy_large_radius = vstar_large.energy.total;
  study.limit.radius_change =
      std::abs(vstar_large.energy.total - vstar.energy.total) / std::abs(vstar.energy.total);
  study.limit.converged = vstar.converged && vstar_large.converged;

  const EnergyModel limit_model(grid, limit_params);
  const double vstar_norm = std::sqrt(limit_model.norm_sq(vstar.field));

  study.records.resize(lambdas.size());
  const int n = static_cast<int>(lambdas.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i)
  {
    RescaleRecord &rec = study.records[i];
    const double lam = lambdas[i];
    rec.lambda = lam;
    try
    {
      const GridPtr ugrid = build_grid(lam * grid->radius(), grid->nr(), grid->ntheta(), grid->sector());
      ModelParams mp = params;
      mp.lambda = lam;
      const SolveReport u = solve_ground(ugrid, mp, with_seed(cfg, SeedKind::kRadial, lam));
      rec.c_lambda = u.energy.total;
      rec.converged = u.converged;
      const Field v = rescale_to_limit_grid(u.field, grid, lam, p);
      rec.j_lambda = rescaled_level(v, p, lam * lam);
      const double predicted = std::pow(lam, 4.0 / (p - 2.0)) * rec.c_lambda;
      rec.identity_error = std::abs(rec.j_lambda - predicted) / std::abs(rec.j_lambda);
      rec.limit_gap = std::sqrt(std::max(limit_model.norm_sq(v - vstar.field), 0.0)) / vstar_norm;
    }
    catch (const Error &e)
    {
      rec.error = e.what();
    }
  }
  return study;
}

}  // namespace spiralnls
