// SPDX-License-Identifier: Apache-2.0

#include "spiralnls/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spiralnls/diagnostics.hpp"
#include "spiralnls/kernels.hpp"
#include "spiralnls/linalg.hpp"
#include "spiralnls/radial_oracle.hpp"

namespace spiralnls
{

const char *to_string(SeedKind kind)
{
  switch (kind)
  {
  case SeedKind::kRadial:
    return "radial";
  case SeedKind::kDipole:
    return "dipole";
  case SeedKind::kRadialNodal:
    return "radial-nodal";
  case SeedKind::kCustom:
    return "custom";
  }
  return "unknown";
}

SeedKind parse_seed_kind(const std::string &text)
{
  for (SeedKind k : {SeedKind::kRadial, SeedKind::kDipole, SeedKind::kRadialNodal, SeedKind::kCustom})
  {
    if (text == to_string(k))
    {
      return k;
    }
  }
  fail(ErrorCode::kInvalidArgument, "unknown seed kind '" + text + "'");
}

void SolveConfig::validate() const
{
  require(max_iters > 0, "max_iters must be positive");
  require(grad_tol > 0.0 && std::isfinite(grad_tol), "grad_tol must be positive");
  require(step > 0.0 && step <= 1.0, "step must lie in (0, 1]");
  require(seed_scale > 0.0 && std::isfinite(seed_scale), "seed_scale must be positive");
  require(newton_switch > 0.0 && newton_switch <= 1e-2, "newton_switch must lie in (0, 1e-2]");
  require(newton_max_steps > 0, "newton_max_steps must be positive");
  require(seed_kind != SeedKind::kCustom || custom_seed.has_value(),
          "custom seed kind needs a seed field");
}

namespace
{

constexpr double kMinStep = 1e-4;
constexpr double kMaxStep = 1.0;
constexpr int kGrowAfter = 5;
// Relative slack in the energy acceptance test; below it descent is round-off.
constexpr double kEnergySlack = 1e-12;

struct Projected
{
  Field field;
  double energy;
  double norm_sq;
};

// Scales onto the Nehari set, energy from the same numbers.
Projected project_single(const EnergyModel &model, Field v)
{
  const double p = model.params().p;
  const double quad = model.norm_sq(v);
  const double lp = lp_norm_pow(v, p);
  if (!(quad > 0.0) || !(lp > 0.0) || !std::isfinite(quad) || !std::isfinite(lp))
  {
    fail(ErrorCode::kSeedCollapsed, "iterate collapsed to zero or became non-finite");
  }
  const double t = std::pow(quad / lp, 1.0 / (p - 2.0));
  v *= t;
  const double nq = t * t * quad;
  return {std::move(v), 0.5 * nq - std::pow(t, p) * lp / p, nq};
}

Projected project_double(const EnergyModel &model, Field v)
{
  const double p = model.params().p;
  const NodalSplit s = nodal_split(model, v);
  const auto [a, b] = nodal_coefficients(s, p);
  for (double &x : v.values())
  {
    x *= (x > 0.0) ? a : b;
  }
  const double nq = a * a * s.plus_norm_sq + 2.0 * a * b * s.cross + b * b * s.minus_norm_sq;
  const double lp = std::pow(a, p) * s.plus_lp + std::pow(b, p) * s.minus_lp;
  if (!std::isfinite(nq) || !(nq > 0.0))
  {
    fail(ErrorCode::kSeedCollapsed, "nodal iterate became non-finite");
  }
  return {std::move(v), 0.5 * nq - lp / p, nq};
}

SolveReport finish(const EnergyModel &model, Field u, SolveReport rep)
{
  rep.field = std::move(u);
  rep.energy = model.energy(rep.field);
  rep.nehari = manifold_residual(model, rep.field);
  rep.linf = rep.field.max_abs();
  rep.h1 = h1_norm(rep.field);
  if (rep.field.grid().sector().periodic())
  {
    rep.nonradiality = nonradiality(rep.field, model.params());
  }
  return rep;
}

// Newton direction d solving E''(u) d = -g in the lambda metric, by GMRES on
// mode coefficients so the lambda inner product is cheap and the Hessian is
// self-adjoint in it.
Field newton_direction(const EnergyModel &model, const Field &u, const Field &g, double rel_tol)
{
  const std::size_t n = u.grid().size();
  const double p = model.params().p;
  std::vector<double> weight(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    weight[i] = (p - 1.0) * std::pow(std::abs(u.values()[i]), p - 2.0);
  }
  std::vector<double> solved(n);
  const linalg::LinearMap hess = [&](std::span<const double> x, std::span<double> y)
  {
    Field work = from_modes(u.grid_ptr(), x);
    for (std::size_t i = 0; i < n; ++i)
    {
      work.values()[i] *= weight[i];
    }
    model.op().solve_modes(to_modes(work), solved);
    for (std::size_t i = 0; i < n; ++i)
    {
      y[i] = x[i] - solved[i];
    }
  };
  const linalg::InnerProduct dot = [&](std::span<const double> a, std::span<const double> b)
  { return model.inner_modes(a, b); };
  std::vector<double> rhs = to_modes(g);
  for (double &x : rhs)
  {
    x = -x;
  }
  std::vector<double> delta(n, 0.0);
  linalg::gmres(hess, rhs, delta, dot, rel_tol, 80, 800);
  return from_modes(u.grid_ptr(), delta);
}

class Descent
{
public:
  Descent(const EnergyModel &model, const SolveConfig &cfg, bool nodal, SymmetryClass sym,
          Field seed, SolveReport &rep)
      : model_(model), cfg_(cfg), nodal_(nodal), sym_(sym), rep_(rep),
        cur_(project(std::move(seed))), g_(cur_.field.grid_ptr()), step_(cfg.step)
  {
    refresh();
  }

  const Field &field() const { return cur_.field; }
  const Field &gradient() const { return g_; }
  double grad_norm() const { return gnorm_; }
  int iterations() const { return iterations_; }

  // Descent steps until the gradient norm reaches `stop_at` or the total
  // iteration budget or `limit` further steps are spent.
  void run(double stop_at, int limit)
  {
    for (int done = 0; done < limit && iterations_ < cfg_.max_iters && gnorm_ > stop_at; ++done)
    {
      step_once();
    }
  }

  // Newton step of length t along d, projected back and relaxed by a few
  // descent steps. Keeps the result only if the gradient norm drops.
  bool try_newton(const Field &d, double t, double target)
  {
    const Projected saved_cur = cur_;
    const Field saved_g = g_;
    const double saved_norm = gnorm_;
    const double saved_step = step_;
    const int saved_iters = iterations_;
    const std::size_t saved_trace = rep_.trace.size();
    Field trial = cur_.field;
    trial.axpy(t, d);
    enforce_symmetry(sym_, trial);
    try
    {
      cur_ = project(std::move(trial));
    }
    catch (const Error &)
    {
      return false;
    }
    refresh();
    step_ = kMaxStep;
    run(target, kRelaxSteps);
    if (gnorm_ < saved_norm)
    {
      return true;
    }
    cur_ = saved_cur;
    g_ = saved_g;
    gnorm_ = saved_norm;
    step_ = saved_step;
    iterations_ = saved_iters;
    rep_.trace.resize(saved_trace);
    return false;
  }

private:
  static constexpr int kRelaxSteps = 12;

  Projected project(Field v) const
  {
    return nodal_ ? project_double(model_, std::move(v)) : project_single(model_, std::move(v));
  }

  void refresh()
  {
    g_ = model_.gradient(cur_.field);
    enforce_symmetry(sym_, g_);
    gnorm_ = std::sqrt(std::max(model_.norm_sq(g_), 0.0) / cur_.norm_sq);
    if (cfg_.keep_trace)
    {
      rep_.trace.push_back({iterations_, cur_.energy, gnorm_, step_});
    }
  }

  void step_once()
  {
    while (true)
    {
      Field trial = cur_.field;
      trial.axpy(-step_, g_);
      std::optional<Projected> projected;
      try
      {
        projected = project(std::move(trial));
      }
      catch (const Error &e)
      {
        // A step that wipes out a phase is too long, not a dead end.
        if (e.code() != ErrorCode::kOnePhaseMissing || step_ <= kMinStep)
        {
          throw;
        }
        step_ = std::max(0.5 * step_, kMinStep);
        accepts_ = 0;
        continue;
      }
      Projected &next = *projected;
      if (next.energy <= cur_.energy + kEnergySlack * std::abs(cur_.energy) || step_ <= kMinStep)
      {
        cur_ = std::move(next);
        if (++accepts_ >= kGrowAfter)
        {
          step_ = std::min(2.0 * step_, kMaxStep);
          accepts_ = 0;
        }
        break;
      }
      step_ = std::max(0.5 * step_, kMinStep);
      accepts_ = 0;
    }
    ++iterations_;
    refresh();
  }

  const EnergyModel &model_;
  const SolveConfig &cfg_;
  bool nodal_;
  SymmetryClass sym_;
  SolveReport &rep_;
  Projected cur_;
  Field g_;
  double gnorm_ = INFINITY;
  double step_;
  int accepts_ = 0;
  int iterations_ = 0;
};

SolveReport descend(const GridPtr &grid, const ModelParams &params, const SolveConfig &cfg,
                    bool nodal)
{
  params.validate();
  cfg.validate();
  const EnergyModel model(grid, params);
  Field seed = cfg.seed_kind == SeedKind::kCustom ? *cfg.custom_seed : make_seed(grid, params, cfg);
  if (!seed.grid().same_as(*grid))
  {
    fail(ErrorCode::kGridMismatch, "seed grid differs from solve grid");
  }
  const SymmetryClass sym = detect_symmetry(seed);
  SolveReport rep(seed);
  rep.seed = to_string(cfg.seed_kind);
  Descent descent(model, cfg, nodal, sym, std::move(seed), rep);

  if (cfg.newton_refine)
  {
    const double target = std::max(1e-2 * cfg.grad_tol, 1e-13);
    descent.run(std::max(cfg.newton_switch, cfg.grad_tol), cfg.max_iters);
    while (rep.newton_steps < cfg.newton_max_steps && descent.grad_norm() > target &&
           descent.grad_norm() <= std::max(cfg.newton_switch, 1e-3))
    {
      const double lin_tol = std::clamp(0.1 * descent.grad_norm(), 1e-14, 1e-4);
      const Field d = newton_direction(model, descent.field(), descent.gradient(), lin_tol);
      ++rep.newton_steps;
      bool accepted = false;
      for (double t = 1.0; t >= 1.0 / 64 && !accepted; t *= 0.5)
      {
        accepted = descent.try_newton(d, t, target);
      }
      if (!accepted)
      {
        rep.newton_stalled = true;
        break;
      }
    }
  }
  descent.run(cfg.grad_tol, cfg.max_iters);

  rep.iterations = descent.iterations();
  rep.grad_norm = descent.grad_norm();
  rep.converged = rep.grad_norm <= cfg.grad_tol;
  if (!rep.converged)
  {
    rep.failure = rep.newton_stalled ? ErrorCode::kIndefiniteHessianStall : ErrorCode::kMaxItersExceeded;
  }
  return finish(model, descent.field(), std::move(rep));
}

}  // namespace

SymmetryClass detect_symmetry(const Field &u)
{
  const PolarGrid &g = u.grid();
  if (!g.sector().periodic())
  {
    return SymmetryClass::kNone;
  }
  const int nt = g.ntheta();
  bool radial = true;
  bool even = true;
  for (int j = 0; j < g.nr(); ++j)
  {
    for (int k = 1; k < nt; ++k)
    {
      radial = radial && u.at(j, k) == u.at(j, 0);
      even = even && u.at(j, k) == u.at(j, nt - k);
    }
  }
  return radial ? SymmetryClass::kRadial : even ? SymmetryClass::kEven : SymmetryClass::kNone;
}

void enforce_symmetry(SymmetryClass sym, Field &u)
{
  if (sym == SymmetryClass::kRadial)
  {
    u = radial_average(u);
  }
  else if (sym == SymmetryClass::kEven)
  {
    const PolarGrid &g = u.grid();
    const int nt = g.ntheta();
    for (int j = 0; j < g.nr(); ++j)
    {
      for (int k = 1; k < nt / 2; ++k)
      {
        const double m = 0.5 * (u.at(j, k) + u.at(j, nt - k));
        u.at(j, k) = m;
        u.at(j, nt - k) = m;
      }
    }
  }
}

Field make_seed(const GridPtr &grid, const ModelParams &params, const SolveConfig &cfg)
{
  const double ell = cfg.seed_scale;
  const Sector &sector = grid->sector();
  switch (cfg.seed_kind)
  {
  case SeedKind::kRadial:
    if (sector.periodic())
    {
      return Field::from_function(grid, [ell](double r, double)
                                  { return 2.0 * std::exp(-r * r / (4.0 * ell * ell)); });
    }
    else
    {
      const double kappa = std::numbers::pi / sector.width();
      const double alpha = sector.half_angle;
      return Field::from_function(grid,
                                  [=](double r, double theta)
                                  {
                                    const double s = r / ell;
                                    return 2.0 * s * std::exp(-s * s / 4.0) * std::sin(kappa * (theta + alpha));
                                  });
    }
  case SeedKind::kDipole:
  {
    require(sector.periodic(), "dipole seed needs a full-disk grid");
    Field seed = Field::from_function(grid,
                                      [ell](double r, double theta)
                                      {
                                        const double s = r / ell;
                                        return 2.0 * s * std::exp(-s * s / 4.0) * std::cos(theta);
                                      });
    // cos(theta_k) and cos(theta_{N-k}) differ in the last bit; make the
    // evenness exact so the flow keeps it.
    enforce_symmetry(SymmetryClass::kEven, seed);
    return seed;
  }
  case SeedKind::kRadialNodal:
  {
    require(sector.periodic(), "radial nodal seed needs a full-disk grid");
    const RadialProfile prof = shoot_nodal(params.p, 1);
    return Field::from_function(grid, [&](double r, double) { return prof.value_at(r / ell); });
  }
  case SeedKind::kCustom:
    require(cfg.custom_seed.has_value(), "custom seed kind needs a seed field");
    return *cfg.custom_seed;
  }
  fail(ErrorCode::kInvalidArgument, "unknown seed kind");
}

double relative_gradient_norm(const EnergyModel &model, const Field &u)
{
  const Field g = model.gradient(u);
  return std::sqrt(std::max(model.norm_sq(g), 0.0) / model.norm_sq(u));
}

SolveReport solve_ground(const GridPtr &grid, const ModelParams &params, const SolveConfig &cfg)
{
  return descend(grid, params, cfg, false);
}

SolveReport solve_nodal(const GridPtr &grid, const ModelParams &params, const SolveConfig &cfg)
{
  require(grid->sector().periodic(), "nodal solves run on the full disk");
  return descend(grid, params, cfg, true);
}

NewtonResult newton_refine(const Field &u0, const ModelParams &params, double tol, int max_steps,
                           SymmetryClass sym)
{
  require(tol > 0.0, "newton tolerance must be positive");
  const EnergyModel model(u0.grid_ptr(), params);
  NewtonResult res{u0, 0, relative_gradient_norm(model, u0), false};
  if (!(res.residual < 1e-3))
  {
    fail(ErrorCode::kInvalidArgument, "newton refinement needs a starting residual below 1e-3");
  }
  Field u = u0;
  while (res.steps < max_steps && res.residual > tol)
  {
    Field g = model.gradient(u);
    enforce_symmetry(sym, g);
    Field d = newton_direction(model, u, g, std::clamp(0.1 * res.residual, 1e-14, 1e-4));
    enforce_symmetry(sym, d);
    ++res.steps;
    bool improved = false;
    for (double t = 1.0; t >= 1.0 / 64 && !improved; t *= 0.5)
    {
      Field trial = u;
      trial.axpy(t, d);
      if (!trial.all_finite())
      {
        continue;
      }
      const double r = relative_gradient_norm(model, trial);
      if (r < res.residual)
      {
        u = std::move(trial);
        res.residual = r;
        improved = true;
      }
    }
    if (!improved)
    {
      res.stalled = true;
      break;
    }
  }
  res.field = std::move(u);
  return res;
}

}  // namespace spiralnls
