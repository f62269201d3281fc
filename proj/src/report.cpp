// SPDX-License-Identifier: Apache-2.0

#include "spiralnls/report.hpp"

#include <cmath>

#include "spiralnls/text.hpp"

#ifndef SPIRALNLS_VERSION
#define SPIRALNLS_VERSION "0.0.0"
#endif

namespace spiralnls
{

namespace
{

Json real(double x)
{
  if (!std::isfinite(x))
  {
    return nullptr;
  }
  return x;
}

template <class T>
Json optional_value(const std::optional<T> &v)
{
  if (!v)
  {
    return nullptr;
  }
  if constexpr (std::is_floating_point_v<T>)
  {
    return real(*v);
  }
  else
  {
    return *v;
  }
}

// CSV cell for a real: shortest round-trip, empty for non-finite.
std::string cell(double x)
{
  return std::isfinite(x) ? format_real(x) : std::string();
}

std::string quoted(const std::string &s)
{
  if (s.find_first_of(",\"\n") == std::string::npos)
  {
    return s;
  }
  std::string out = "\"";
  for (char c : s)
  {
    out += c;
    if (c == '"')
    {
      out += '"';
    }
  }
  return out + "\"";
}

}  // namespace

const char *artifact_version()
{
  return SPIRALNLS_VERSION;
}

Json to_json(const ModelParams &params)
{
  return Json{{"p", real(params.p)}, {"q", real(params.q)}, {"lambda", real(params.lambda)}};
}

Json to_json(const PolarGrid &grid)
{
  return Json{{"radius", real(grid.radius())},
              {"nr", grid.nr()},
              {"ntheta", grid.ntheta()},
              {"sector", grid.sector().name()}};
}

Json to_json(const EnergyBreakdown &e)
{
  return Json{{"dirichlet", real(e.dirichlet)},
              {"angular", real(e.angular)},
              {"mass", real(e.mass)},
              {"potential", real(e.potential)},
              {"total", real(e.total)}};
}

Json to_json(const NehariResidual &r)
{
  return Json{{"single", real(r.single)}, {"plus", real(r.plus)}, {"minus", real(r.minus)}};
}

Json to_json(const SymmetryReport &s)
{
  return Json{{"nonradiality", optional_value(s.nonradiality)},
              {"linf", real(s.linf)},
              {"radiality_threshold", real(s.radiality_threshold)},
              {"below_threshold", s.below_threshold},
              {"angular_monotone", optional_value(s.angular_monotone)},
              {"wirtinger_ok", s.wirtinger_ok}};
}

Json to_json(const SolveReport &r, const ModelParams &params)
{
  Json j;
  j["converged"] = r.converged;
  j["failure"] = r.failure ? Json(to_string(*r.failure)) : Json(nullptr);
  j["seed"] = r.seed;
  j["params"] = to_json(params);
  j["grid"] = to_json(r.field.grid());
  j["energy"] = to_json(r.energy);
  j["nehari"] = to_json(r.nehari);
  j["grad_norm"] = real(r.grad_norm);
  j["iterations"] = r.iterations;
  j["newton_steps"] = r.newton_steps;
  j["newton_stalled"] = r.newton_stalled;
  j["linf"] = real(r.linf);
  j["h1"] = real(r.h1);
  j["nonradiality"] = optional_value(r.nonradiality);
  j["symmetry"] = to_json(symmetry_report(r.field, params));
  return j;
}

Json to_json(const RadialProfile &w)
{
  return Json{{"kind", w.kind == ProfileKind::kGround ? "ground" : "nodal"},
              {"zeros", w.zeros},
              {"p", real(w.p)},
              {"amplitude", real(w.amplitude)},
              {"match_radius", real(w.match_radius)},
              {"gradient_sq", real(w.gradient_sq)},
              {"mass", real(w.mass)},
              {"lp", real(w.lp)},
              {"energy", real(w.energy)}};
}

Json to_json(const SweepRecord &r)
{
  return Json{{"lambda", real(r.lambda)},
              {"alpha_hat", real(r.alpha_hat)},
              {"c_hat", real(r.c_hat)},
              {"beta_hat", real(r.beta_hat)},
              {"beta_dipole", real(r.beta_dipole)},
              {"beta_radial_nodal", real(r.beta_radial_nodal)},
              {"nonradiality", real(r.nonradiality)},
              {"winner", to_string(r.winner)},
              {"tau", real(r.tau)},
              {"converged", r.converged},
              {"error", r.error}};
}

Json to_json(const LambdaBracket &b)
{
  return Json{{"last_radial", optional_value(b.last_radial)},
              {"first_dipole", optional_value(b.first_dipole)},
              {"transitions", b.transitions}};
}

Json to_json(const InfinityRecord &r)
{
  return Json{{"lambda", real(r.lambda)},
              {"tau", real(r.tau)},
              {"tau_over_lambda", real(r.tau_over_lambda)},
              {"energy", real(r.energy)},
              {"h1_gap", real(r.h1_gap)},
              {"h1_gap_relative", real(r.h1_gap_relative)},
              {"converged", r.converged},
              {"error", r.error}};
}

Json to_json(const RescaleRecord &r)
{
  return Json{{"lambda", real(r.lambda)},
              {"c_lambda", real(r.c_lambda)},
              {"j_lambda", real(r.j_lambda)},
              {"identity_error", real(r.identity_error)},
              {"limit_gap", real(r.limit_gap)},
              {"converged", r.converged},
              {"error", r.error}};
}

Json to_json(const LimitSolution &l)
{
  return Json{{"energy", real(l.energy)},
              {"energy_large_radius", real(l.energy_large_radius)},
              {"radius_change", real(l.radius_change)},
              {"converged", l.converged}};
}

Json manifest(const std::string &command, const RunConfig &cfg)
{
  Json config = Json::object();
  for (const std::string &key : config_keys())
  {
    config[key] = get_config_value(cfg, key);
  }
  Json j;
  j["artifact"] = "spiralnls";
  j["version"] = artifact_version();
  j["command"] = command;
  j["params"] = Json{{"p", real(cfg.p)}, {"q", real(cfg.q)}, {"lambda", real(cfg.lambda)}};
  j["grid"] = Json{{"radius", real(cfg.radius)},
                   {"nr", cfg.nr},
                   {"ntheta", cfg.ntheta},
                   {"sector", cfg.sector}};
  j["seed"] = Json{{"kind", cfg.seed}, {"scale", real(cfg.seed_scale)}};
  j["tolerances"] = Json{{"grad_tol", real(cfg.grad_tol)},
                         {"max_iters", cfg.max_iters},
                         {"newton", cfg.newton}};
  j["config"] = std::move(config);
  return j;
}

std::string sweep_csv(const std::vector<SweepRecord> &records)
{
  std::string out = "lambda,alpha_hat,c_hat,beta_hat,beta_dipole,beta_radial_nodal,"
                    "nonradiality,winner,tau,converged,error\n";
  for (const SweepRecord &r : records)
  {
    out += cell(r.lambda) + "," + cell(r.alpha_hat) + "," + cell(r.c_hat) + "," +
           cell(r.beta_hat) + "," + cell(r.beta_dipole) + "," + cell(r.beta_radial_nodal) + "," +
           cell(r.nonradiality) + "," + to_string(r.winner) + "," + cell(r.tau) + "," +
           (r.converged ? "true" : "false") + "," + quoted(r.error) + "\n";
  }
  return out;
}

std::string infinity_csv(const std::vector<InfinityRecord> &records)
{
  std::string out = "lambda,tau,tau_over_lambda,energy,h1_gap,h1_gap_relative,converged,error\n";
  for (const InfinityRecord &r : records)
  {
    out += cell(r.lambda) + "," + cell(r.tau) + "," + cell(r.tau_over_lambda) + "," +
           cell(r.energy) + "," + cell(r.h1_gap) + "," + cell(r.h1_gap_relative) + "," +
           (r.converged ? "true" : "false") + "," + quoted(r.error) + "\n";
  }
  return out;
}

std::string rescale_csv(const std::vector<RescaleRecord> &records)
{
  std::string out = "lambda,c_lambda,j_lambda,identity_error,limit_gap,converged,error\n";
  for (const RescaleRecord &r : records)
  {
    out += cell(r.lambda) + "," + cell(r.c_lambda) + "," + cell(r.j_lambda) + "," +
           cell(r.identity_error) + "," + cell(r.limit_gap) + "," +
           (r.converged ? "true" : "false") + "," + quoted(r.error) + "\n";
  }
  return out;
}

std::string trace_csv(const std::vector<TraceEntry> &trace)
{
  std::string out = "iteration,energy,grad_norm,step\n";
  for (const TraceEntry &t : trace)
  {
    out += std::to_string(t.iteration) + "," + cell(t.energy) + "," + cell(t.grad_norm) + "," +
           cell(t.step) + "\n";
  }
  return out;
}

}  // namespace spiralnls
