// SPDX-License-Identifier: Apache-2.0

#include "spiralnls/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>

#include "spiralnls/config.hpp"
#include "spiralnls/diagnostics.hpp"
#include "spiralnls/kernels.hpp"
#include "spiralnls/report.hpp"
#include "spiralnls/spiral3d.hpp"
#include "spiralnls/studies.hpp"
#include "spiralnls/text.hpp"

namespace spiralnls
{

namespace
{

struct Invocation
{
  std::string command;
  std::string config_path;
  std::map<std::string, std::string> overrides;
};

RunConfig resolve_config(const Invocation &inv)
{
  RunConfig cfg = inv.config_path.empty() ? RunConfig{} : load_config(inv.config_path);
  for (const auto &[key, value] : inv.overrides)
  {
    set_config_value(cfg, key, value);
  }
  if (cfg.out.empty())
  {
    const char *env = std::getenv(kOutEnv);
    cfg.out = (env != nullptr && *env != '\0') ? env : kDefaultOut;
  }
  if (cfg.backend == "serial")
  {
    kernels::set_backend(kernels::Backend::kSerial);
  }
  else if (cfg.backend == "omp")
  {
    kernels::set_backend(kernels::Backend::kOpenMP);
  }
  else
  {
    fail(ErrorCode::kConfig, "backend must be serial or omp, got '" + cfg.backend + "'");
  }
  return cfg;
}

std::string out_path(const RunConfig &cfg, const std::string &name)
{
  return (std::filesystem::path(cfg.out) / name).string();
}

void write_json(const RunConfig &cfg, const std::string &name, const Json &j)
{
  write_text_file(out_path(cfg, name), j.dump(2) + "\n");
}

std::vector<double> required_lambdas(const RunConfig &cfg)
{
  if (cfg.lambdas.empty())
  {
    fail(ErrorCode::kConfig, "this command needs a nonempty 'lambdas' list");
  }
  return cfg.lambdas;
}

StoredSolution required_input(const RunConfig &cfg)
{
  if (cfg.input.empty())
  {
    fail(ErrorCode::kConfig, "this command needs 'input' naming a solution file");
  }
  return load_solution(cfg.input);
}

int run_solve(const RunConfig &cfg, bool nodal, std::ostream &out)
{
  const ModelParams params = model_params(cfg);
  const GridPtr grid = make_grid(cfg);
  SolveConfig sc = solve_config(cfg);
  if (nodal && !cfg.assigned.contains("seed"))
  {
    sc.seed_kind = SeedKind::kDipole;
  }
  if (sc.seed_kind == SeedKind::kCustom)
  {
    StoredSolution seed = required_input(cfg);
    if (!seed.field.grid().same_as(*grid))
    {
      fail(ErrorCode::kGridMismatch, "custom seed grid differs from the configured grid");
    }
    sc.custom_seed = std::move(seed.field);
  }
  const SolveReport rep = nodal ? solve_nodal(grid, params, sc) : solve_ground(grid, params, sc);
  const std::string command = nodal ? "solve-nodal" : "solve-ground";

  write_json(cfg, "manifest.json", manifest(command, cfg));
  write_json(cfg, "report.json", to_json(rep, params));
  save_solution(out_path(cfg, "solution.csv"),
                StoredSolution{rep.field, params, nodal ? "nodal" : "ground", sc.grad_tol, rep.seed});
  if (sc.keep_trace)
  {
    write_text_file(out_path(cfg, "trace.csv"), trace_csv(rep.trace));
  }
  out << command << ": " << (rep.converged ? "converged" : "not converged")
      << " energy=" << format_real(rep.energy.total, 12) << " grad=" << format_real(rep.grad_norm, 3)
      << " iterations=" << rep.iterations << " -> " << cfg.out << "\n";
  return rep.converged ? kExitOk : kExitNumerical;
}

int run_radial(const RunConfig &cfg, std::ostream &out)
{
  const RadialOptions opts = radial_options(cfg);
  const RadialProfile w =
      cfg.zeros == 0 ? shoot_ground(cfg.p, opts) : shoot_nodal(cfg.p, cfg.zeros, opts);
  write_json(cfg, "manifest.json", manifest("solve-radial", cfg));
  write_json(cfg, "radial.json", to_json(w));
  write_text_file(out_path(cfg, "profile.csv"), w.to_csv());
  out << "solve-radial: zeros=" << w.zeros << " amplitude=" << format_real(w.amplitude, 12)
      << " energy=" << format_real(w.energy, 12) << " -> " << cfg.out << "\n";
  return kExitOk;
}

int run_sweep(const RunConfig &cfg, std::ostream &out)
{
  const std::vector<double> lambdas = required_lambdas(cfg);
  const SweepGrids grids{make_grid(cfg, Sector::full_disk()), make_grid(cfg, Sector::half_disk())};
  const std::vector<SweepRecord> recs = sweep_lambda(model_params(cfg), lambdas, grids,
                                                     solve_config(cfg));
  const LambdaBracket br = bracket(recs);
  Json j;
  j["records"] = Json::array();
  bool all = true;
  for (const SweepRecord &r : recs)
  {
    j["records"].push_back(to_json(r));
    all = all && r.converged;
  }
  j["bracket"] = to_json(br);
  write_json(cfg, "manifest.json", manifest("sweep", cfg));
  write_json(cfg, "sweep.json", j);
  write_text_file(out_path(cfg, "sweep.csv"), sweep_csv(recs));
  out << "sweep: " << recs.size() << " pitches, " << br.transitions << " transition(s)"
      << (all ? "" : ", some solves failed") << " -> " << cfg.out << "\n";
  return all ? kExitOk : kExitNumerical;
}

int run_infinity(const RunConfig &cfg, std::ostream &out)
{
  const std::vector<double> lambdas = required_lambdas(cfg);
  const RadialProfile w = shoot_ground(cfg.p, radial_options(cfg));
  const auto recs = asymptotics_infinity(model_params(cfg), lambdas,
                                         make_grid(cfg, Sector::half_disk()), solve_config(cfg), w);
  Json j;
  j["limit_profile"] = to_json(w);
  j["records"] = Json::array();
  bool all = true;
  for (const InfinityRecord &r : recs)
  {
    j["records"].push_back(to_json(r));
    all = all && r.converged;
  }
  write_json(cfg, "manifest.json", manifest("asympt-inf", cfg));
  write_json(cfg, "asympt_inf.json", j);
  write_text_file(out_path(cfg, "asympt_inf.csv"), infinity_csv(recs));
  out << "asympt-inf: " << recs.size() << " pitches, final relative gap "
      << format_real(recs.back().h1_gap_relative, 4) << " -> " << cfg.out << "\n";
  return all ? kExitOk : kExitNumerical;
}

int run_zero(const RunConfig &cfg, std::ostream &out)
{
  const std::vector<double> lambdas = required_lambdas(cfg);
  const ZeroStudy st = asymptotics_zero(model_params(cfg), lambdas,
                                        make_grid(cfg, Sector::half_disk()), solve_config(cfg));
  Json j;
  j["limit"] = to_json(st.limit);
  j["records"] = Json::array();
  bool all = st.limit.converged;
  for (const RescaleRecord &r : st.records)
  {
    j["records"].push_back(to_json(r));
    all = all && r.converged;
  }
  write_json(cfg, "manifest.json", manifest("asympt-zero", cfg));
  write_json(cfg, "asympt_zero.json", j);
  write_text_file(out_path(cfg, "asympt_zero.csv"), rescale_csv(st.records));
  out << "asympt-zero: limit energy " << format_real(st.limit.energy, 12) << ", "
      << st.records.size() << " pitches -> " << cfg.out << "\n";
  return all ? kExitOk : kExitNumerical;
}

int run_reconstruct(const RunConfig &cfg, std::ostream &out)
{
  const StoredSolution s = required_input(cfg);
  const SpiralField3D f = reconstruct3d(s.field, s.params, cfg.nt, cfg.samples);
  const std::string path = out_path(cfg, "spiral.vtk");
  export_vtk(f, path);
  write_json(cfg, "manifest.json", manifest("reconstruct", cfg));
  out << "reconstruct: " << f.nx << "x" << f.ny << "x" << f.nt << " samples, period "
      << format_real(2.0 * std::numbers::pi * s.params.lambda, 12) << " -> " << path << "\n";
  return kExitOk;
}

int run_check(const RunConfig &cfg, std::ostream &out)
{
  const StoredSolution s = required_input(cfg);
  const std::vector<InvariantCheck> checks = check_solution(s);
  Json j;
  j["input"] = cfg.input;
  j["kind"] = s.kind;
  j["checks"] = Json::array();
  const InvariantCheck *first_bad = nullptr;
  for (const InvariantCheck &c : checks)
  {
    j["checks"].push_back(Json{{"name", c.name},
                               {"ok", c.ok},
                               {"value", std::isfinite(c.value) ? Json(c.value) : Json(nullptr)},
                               {"limit", c.limit}});
    if (!c.ok && first_bad == nullptr)
    {
      first_bad = &c;
    }
  }
  j["ok"] = first_bad == nullptr;
  write_json(cfg, "manifest.json", manifest("check", cfg));
  write_json(cfg, "check.json", j);
  if (first_bad != nullptr)
  {
    out << "check: FAILED " << first_bad->name << " (value " << format_real(first_bad->value, 6)
        << ", limit " << format_real(first_bad->limit, 6) << ")\n";
    return kExitCheckFailed;
  }
  out << "check: all " << checks.size() << " invariants hold for " << cfg.input << "\n";
  return kExitOk;
}

int dispatch(const Invocation &inv, std::ostream &out)
{
  const RunConfig cfg = resolve_config(inv);
  const std::string &c = inv.command;
  if (c == "solve-ground")
  {
    return run_solve(cfg, false, out);
  }
  if (c == "solve-nodal")
  {
    return run_solve(cfg, true, out);
  }
  if (c == "solve-radial")
  {
    return run_radial(cfg, out);
  }
  if (c == "sweep")
  {
    return run_sweep(cfg, out);
  }
  if (c == "asympt-inf")
  {
    return run_infinity(cfg, out);
  }
  if (c == "asympt-zero")
  {
    return run_zero(cfg, out);
  }
  if (c == "reconstruct")
  {
    return run_reconstruct(cfg, out);
  }
  return run_check(cfg, out);
}

struct Command
{
  const char *name;
  const char *help;
};

constexpr Command kCommands[] = {
    {"solve-ground", "least-energy solution (positive on the full disk, one-signed on sectors)"},
    {"solve-nodal", "least-energy sign-changing solution on the full disk"},
    {"solve-radial", "radial profile by shooting; 'zeros' sets the number of sign changes"},
    {"sweep", "ground and nodal levels over the 'lambdas' list"},
    {"asympt-inf", "large-pitch translation study over 'lambdas'"},
    {"asympt-zero", "small-pitch rescaling study over 'lambdas'"},
    {"reconstruct", "3D screw-invariant field from the solution file 'input', as VTK"},
    {"check", "diagnostics on the solution file 'input'"},
};

}  // namespace

int exit_code_for(ErrorCode code)
{
  switch (code)
  {
  case ErrorCode::kIo:
    return kExitIo;
  case ErrorCode::kConfig:
  case ErrorCode::kInvalidArgument:
    return kExitUsage;
  default:
    return kExitNumerical;
  }
}

std::vector<InvariantCheck> check_solution(const StoredSolution &s)
{
  std::vector<InvariantCheck> out;
  const Field &u = s.field;
  const bool finite = u.all_finite();
  out.push_back({"finite_values", finite, finite ? 0.0 : 1.0, 0.0});
  if (!finite)
  {
    return out;
  }
  const EnergyModel model(u.grid_ptr(), s.params);
  const double tol = 10.0 * s.grad_tol;
  const double linf = u.max_abs();
  out.push_back({"nontrivial", linf > 0.0, linf, 0.0});
  if (!(linf > 0.0))
  {
    return out;
  }

  const double grad = relative_gradient_norm(model, u);
  out.push_back({"criticality_residual", grad <= tol, grad, tol});

  const NehariResidual nr = manifold_residual(model, u);
  out.push_back({"nehari_residual", std::abs(nr.single) <= tol, std::abs(nr.single), tol});

  // Sign structure: ground states are one-signed, nodal ones change sign.
  const double lo = u.min_value();
  const double hi = u.max_value();
  const double sign_tol = 1e-6 * linf;
  if (s.kind == "ground")
  {
    const double wrong = std::min(std::max(-lo, 0.0), std::max(hi, 0.0));
    out.push_back({"ground_one_signed", wrong <= sign_tol, wrong, sign_tol});
  }
  else
  {
    const double smaller = std::min(std::max(-lo, 0.0), std::max(hi, 0.0));
    out.push_back({"nodal_changes_sign", smaller > sign_tol, smaller, sign_tol});
    if (smaller > sign_tol)
    {
      out.push_back({"nodal_plus_residual", std::abs(nr.plus) <= tol, std::abs(nr.plus), tol});
      out.push_back({"nodal_minus_residual", std::abs(nr.minus) <= tol, std::abs(nr.minus), tol});
    }
  }

  const WirtingerCheck w = check_wirtinger(u);
  out.push_back({"wirtinger", w.ok, w.lhs, w.rhs});

  const SymmetryReport sym = symmetry_report(u, s.params);
  if (sym.nonradiality && sym.below_threshold)
  {
    out.push_back({"radial_below_threshold", *sym.nonradiality < kRadialThreshold,
                   *sym.nonradiality, kRadialThreshold});
  }
  if (sym.angular_monotone && s.kind == "ground")
  {
    out.push_back({"angular_monotone", *sym.angular_monotone, *sym.angular_monotone ? 1.0 : 0.0,
                   1.0});
  }
  return out;
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Spiraling solutions of the nonlinear Schrodinger equation on planar sections",
               "spiralnls"};
  app.require_subcommand(1);
  Invocation inv;
  std::map<std::string, std::optional<std::string>> raw;
  for (const Command &c : kCommands)
  {
    CLI::App *sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", inv.config_path, "key = value configuration file");
    for (const std::string &key : config_keys())
    {
      std::string names = "--" + key;
      if (key.find('_') != std::string::npos)
      {
        std::string dashed = key;
        std::replace(dashed.begin(), dashed.end(), '_', '-');
        names += ",--" + dashed;
      }
      sub->add_option(names, raw[key], "override config key '" + key + "'");
    }
    sub->callback([&inv, name = std::string(c.name)] { inv.command = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch (const CLI::CallForHelp &)
  {
    out << app.help();
    return kExitOk;
  }
  catch (const CLI::ParseError &e)
  {
    err << "spiralnls: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  for (const auto &[key, value] : raw)
  {
    if (value)
    {
      inv.overrides[key] = *value;
    }
  }

  try
  {
    return dispatch(inv, out);
  }
  catch (const Error &e)
  {
    err << "spiralnls " << inv.command << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  catch (const std::exception &e)
  {
    err << "spiralnls " << inv.command << ": " << e.what() << "\n";
    return kExitNumerical;
  }
}

int run_cli(int argc, char **argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace spiralnls
