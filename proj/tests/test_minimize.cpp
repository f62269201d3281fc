// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "spiralnls/diagnostics.hpp"
#include "spiralnls/minimize.hpp"
#include "spiralnls/radial_oracle.hpp"
#include "support.hpp"

using namespace spiralnls;
using namespace spiralnls::testing;

namespace
{

GridPtr acceptance_disk()
{
  static const GridPtr g = build_grid(30.0, 512, 64, Sector::full_disk());
  return g;
}

SolveConfig with_seed(SeedKind kind, bool newton = false)
{
  SolveConfig cfg;
  cfg.seed_kind = kind;
  cfg.newton_refine = newton;
  return cfg;
}

// max |E'(u) v| / (|u| |v|) over random smooth test fields.
double weak_residual(const Field &u, const ModelParams &params, int trials, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  const EnergyModel model(u.grid_ptr(), params);
  const double nu = std::sqrt(model.norm_sq(u));
  double worst = 0.0;
  for (int i = 0; i < trials; ++i)
  {
    const Field v = random_smooth_field(u.grid_ptr(), rng, 4, 0.2);
    worst = std::max(worst, std::abs(model.derivative(u, v)) / (nu * std::sqrt(model.norm_sq(v))));
  }
  return worst;
}

}  // namespace

TEST_CASE("full-disk ground state is radial and pitch independent")
{
  const double oracle = shoot_ground(4.0).energy;
  std::vector<double> energies;
  for (double lambda : {0.5, 1.0, 2.0})
  {
    const ModelParams params{4.0, 1.0, lambda};
    const SolveReport r = solve_ground(acceptance_disk(), params, SolveConfig{});
    REQUIRE(r.converged);
    REQUIRE(r.nonradiality.has_value());
    CHECK(*r.nonradiality < 1e-8);
    CHECK(rel_diff(r.energy.total, oracle) < 5e-3);
    // Positivity and the Nehari identity.
    CHECK(r.field.min_value() >= -1e-8 * r.linf);
    const double n = lambda_norm_sq(r.field, params);
    CHECK(std::abs(r.energy.total - 0.25 * n) / r.energy.total < 10 * 1e-8);
    CHECK(weak_residual(r.field, params, 50, 7) < 10 * 1e-8);
    energies.push_back(r.energy.total);
  }
  CHECK(rel_diff(energies[0], energies[1]) < 1e-8);
  CHECK(rel_diff(energies[0], energies[2]) < 1e-8);
}

TEST_CASE("descent energies decrease")
{
  const GridPtr g = build_grid(15.0, 128, 16, Sector::half_disk());
  SolveConfig cfg;
  cfg.keep_trace = true;
  const SolveReport r = solve_ground(g, {4.0, 1.0, 2.0}, cfg);
  REQUIRE(r.converged);
  REQUIRE(r.trace.size() > 3);
  for (std::size_t i = 1; i < r.trace.size(); ++i)
  {
    CHECK(r.trace[i].energy <= r.trace[i - 1].energy + 1e-12 * std::abs(r.trace[i - 1].energy));
    CHECK(r.trace[i].step >= 1e-4);
    CHECK(r.trace[i].step <= 1.0);
  }
}

TEST_CASE("half-disk ground levels")
{
  const GridPtr g = build_grid(30.0, 512, 64, Sector::half_disk());
  const SolveReport r1 = solve_ground(g, {4.0, 1.0, 1.0}, SolveConfig{});
  const SolveReport r2 = solve_ground(g, {4.0, 1.0, 2.0}, SolveConfig{});
  REQUIRE(r1.converged);
  REQUIRE(r2.converged);
  CHECK(r1.energy.total >= r2.energy.total);
  CHECK(angular_monotone(r1.field));
  CHECK(angular_monotone(r2.field));
  CHECK(r1.field.min_value() >= -1e-8 * r1.linf);
}

TEST_CASE("large pitch half-disk ground level approaches the planar level")
{
  const GridPtr g = build_grid(40.0, 512, 64, Sector::half_disk());
  const SolveReport r = solve_ground(g, {4.0, 1.0, 40.0}, with_seed(SeedKind::kRadial, true));
  REQUIRE(r.converged);
  CHECK(rel_diff(r.energy.total, 5.850) < 0.02);
  CHECK(r.energy.total >= shoot_ground(4.0).energy * (1 - 5e-3));
}

TEST_CASE("small pitch nodal minimizers are radial")
{
  const LimitLevels levels = limit_levels(4.0);
  const ModelParams params{4.0, 1.0, 0.1};
  for (SeedKind kind : {SeedKind::kDipole, SeedKind::kRadialNodal})
  {
    const SolveReport r = solve_nodal(acceptance_disk(), params, with_seed(kind, true));
    REQUIRE(r.converged);
    REQUIRE(r.nonradiality.has_value());
    CHECK(*r.nonradiality < 1e-6);
    CHECK(rel_diff(r.energy.total, levels.radial_nodal_energy) < 5e-3);
    CHECK(std::abs(r.nehari.plus) < 10 * 1e-8);
    CHECK(std::abs(r.nehari.minus) < 10 * 1e-8);
    CHECK(r.field.min_value() < 0.0);
    CHECK(r.field.max_value() > 0.0);
  }
}

TEST_CASE("large pitch dipole beats the radial nodal level")
{
  const LimitLevels levels = limit_levels(4.0);
  const ModelParams params{4.0, 1.0, 50.0};
  const SolveReport nodal = solve_nodal(acceptance_disk(), params, with_seed(SeedKind::kDipole, true));
  const SolveReport ground = solve_ground(acceptance_disk(), params, SolveConfig{});
  REQUIRE(nodal.converged);
  REQUIRE(ground.converged);
  CHECK(nodal.energy.total < 2 * levels.c_inf + levels.eps_star);
  CHECK(nodal.energy.total >= 2 * ground.energy.total - 1e-6);
  CHECK(*nodal.nonradiality > 1e-2);
}

TEST_CASE("Newton refinement")
{
  const GridPtr g = build_grid(20.0, 256, 32, Sector::half_disk());
  const ModelParams params{4.0, 1.0, 2.0};
  SolveConfig cfg;
  cfg.grad_tol = 1e-6;
  const SolveReport r = solve_ground(g, params, cfg);
  REQUIRE(r.converged);
  const NewtonResult n = newton_refine(r.field, params, 1e-12);
  CHECK(n.residual <= 1e-12);
  CHECK(n.steps <= 5);
  CHECK_FALSE(n.stalled);

  const NewtonResult again = newton_refine(n.field, params, 1e-12);
  CHECK(again.residual <= n.residual);
  CHECK(again.steps == 0);

  CHECK_THROWS_AS(newton_refine(Field(g), params, 1e-12), Error);
}

TEST_CASE("solves are deterministic")
{
  const GridPtr g = build_grid(12.0, 96, 16, Sector::full_disk());
  const ModelParams params{3.0, 1.0, 4.0};
  const SolveConfig cfg = with_seed(SeedKind::kDipole, true);
  const SolveReport a = solve_nodal(g, params, cfg);
  const SolveReport b = solve_nodal(g, params, cfg);
  CHECK(a.iterations == b.iterations);
  CHECK(same_bits(a.field.values(), b.field.values()));
  CHECK(same_bits(a.energy.total, b.energy.total));
}

TEST_CASE("seeds")
{
  const GridPtr disk = build_grid(10.0, 64, 16, Sector::full_disk());
  const GridPtr half = build_grid(10.0, 64, 16, Sector::half_disk());
  const ModelParams params{4.0, 1.0, 1.0};
  CHECK(make_seed(disk, params, with_seed(SeedKind::kRadial)).min_value() > 0.0);
  CHECK(detect_symmetry(make_seed(disk, params, with_seed(SeedKind::kRadial))) == SymmetryClass::kRadial);
  CHECK(detect_symmetry(make_seed(disk, params, with_seed(SeedKind::kDipole))) == SymmetryClass::kEven);
  CHECK(detect_symmetry(make_seed(disk, params, with_seed(SeedKind::kRadialNodal))) == SymmetryClass::kRadial);
  CHECK(make_seed(half, params, with_seed(SeedKind::kRadial)).min_value() > 0.0);
  CHECK_THROWS_AS(make_seed(disk, params, with_seed(SeedKind::kCustom)), Error);
  for (SeedKind k : {SeedKind::kRadial, SeedKind::kDipole, SeedKind::kRadialNodal, SeedKind::kCustom})
  {
    CHECK(parse_seed_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_seed_kind("tripole"), Error);
}

TEST_CASE("custom seeds and symmetry enforcement")
{
  std::mt19937_64 rng(8);
  const GridPtr g = build_grid(10.0, 64, 16, Sector::full_disk());
  Field u = random_nodal_field(g, rng);
  CHECK(detect_symmetry(u) == SymmetryClass::kNone);
  enforce_symmetry(SymmetryClass::kEven, u);
  CHECK(detect_symmetry(u) == SymmetryClass::kEven);
  enforce_symmetry(SymmetryClass::kRadial, u);
  CHECK(detect_symmetry(u) == SymmetryClass::kRadial);

  SolveConfig cfg = with_seed(SeedKind::kCustom);
  cfg.custom_seed = Field::from_function(g, [](double r, double th) { return std::exp(-r * r / 4) * (1 + 0.3 * std::cos(th)); });
  const SolveReport r = solve_ground(g, {4.0, 1.0, 1.0}, cfg);
  CHECK(r.converged);
  CHECK(r.seed == "custom");
  // The cos(theta) part is close to a translation mode and decays slowly.
  CHECK(*r.nonradiality < 1e-6);
}

TEST_CASE("solver configuration is validated")
{
  const GridPtr disk = build_grid(10.0, 64, 16, Sector::full_disk());
  SolveConfig cfg;
  cfg.grad_tol = 0.0;
  CHECK_THROWS_AS(solve_ground(disk, {4.0, 1.0, 1.0}, cfg), Error);
  cfg = SolveConfig{};
  cfg.newton_switch = 0.5;
  CHECK_THROWS_AS(solve_ground(disk, {4.0, 1.0, 1.0}, cfg), Error);
  CHECK_THROWS_AS(solve_nodal(build_grid(10.0, 64, 16, Sector::half_disk()), {4.0, 1.0, 1.0},
                              with_seed(SeedKind::kDipole)),
                  Error);
  CHECK_THROWS_AS(solve_nodal(disk, {4.0, 1.0, 1.0}, with_seed(SeedKind::kRadial)), Error);
}

TEST_CASE("iteration cap is reported as a failure, not an exception")
{
  const GridPtr g = build_grid(15.0, 128, 16, Sector::half_disk());
  SolveConfig cfg;
  cfg.max_iters = 3;
  const SolveReport r = solve_ground(g, {4.0, 1.0, 2.0}, cfg);
  CHECK_FALSE(r.converged);
  REQUIRE(r.failure.has_value());
  CHECK(*r.failure == ErrorCode::kMaxItersExceeded);
}
