// SPDX-License-Identifier: Apache-2.0

#include "spiralnls/config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "spiralnls/errors.hpp"
#include "spiralnls/text.hpp"

namespace spiralnls
{

namespace
{

struct Entry
{
  std::function<void(RunConfig &, std::string_view)> set;
  std::function<std::string(const RunConfig &)> get;
};

double to_real(std::string_view v, std::string_view key)
{
  try
  {
    return parse_real(v, key);
  }
  catch (const Error &e)
  {
    fail(ErrorCode::kConfig, e.message());
  }
}

int to_int(std::string_view v, std::string_view key)
{
  try
  {
    const long long x = parse_int(v, key);
    if (x < -2147483647LL || x > 2147483647LL)
    {
      fail(ErrorCode::kConfig, "integer out of range for " + std::string(key));
    }
    return static_cast<int>(x);
  }
  catch (const Error &e)
  {
    if (e.code() == ErrorCode::kConfig)
    {
      throw;
    }
    fail(ErrorCode::kConfig, e.message());
  }
}

bool to_bool(std::string_view v, std::string_view key)
{
  v = trim(v);
  if (v == "true" || v == "1")
  {
    return true;
  }
  if (v == "false" || v == "0")
  {
    return false;
  }
  fail(ErrorCode::kConfig, "expected true or false for " + std::string(key));
}

template <typename T>
Entry real_entry(T RunConfig::*member, const char *key)
{
  return {[member, key](RunConfig &c, std::string_view v) { c.*member = to_real(v, key); },
          [member](const RunConfig &c) { return format_real(c.*member); }};
}

Entry int_entry(int RunConfig::*member, const char *key)
{
  return {[member, key](RunConfig &c, std::string_view v) { c.*member = to_int(v, key); },
          [member](const RunConfig &c) { return std::to_string(c.*member); }};
}

Entry bool_entry(bool RunConfig::*member, const char *key)
{
  return {[member, key](RunConfig &c, std::string_view v) { c.*member = to_bool(v, key); },
          [member](const RunConfig &c) { return std::string(c.*member ? "true" : "false"); }};
}

Entry string_entry(std::string RunConfig::*member)
{
  return {[member](RunConfig &c, std::string_view v) { c.*member = std::string(trim(v)); },
          [member](const RunConfig &c) { return c.*member; }};
}

Entry list_entry(std::vector<double> RunConfig::*member, const char *key)
{
  return {[member, key](RunConfig &c, std::string_view v)
          {
            std::vector<double> out;
            v = trim(v);
            while (!v.empty())
            {
              const auto comma = v.find(',');
              out.push_back(to_real(v.substr(0, comma), key));
              if (comma == std::string_view::npos)
              {
                break;
              }
              v = v.substr(comma + 1);
              if (trim(v).empty())
              {
                fail(ErrorCode::kConfig, "trailing comma in list for " + std::string(key));
              }
            }
            c.*member = std::move(out);
          },
          [member](const RunConfig &c)
          {
            std::string s;
            for (std::size_t i = 0; i < (c.*member).size(); ++i)
            {
              s += (i ? "," : "") + format_real((c.*member)[i]);
            }
            return s;
          }};
}

const std::map<std::string, Entry, std::less<>> &schema()
{
  static const std::map<std::string, Entry, std::less<>> table = {
      {"p", real_entry(&RunConfig::p, "p")},
      {"q", real_entry(&RunConfig::q, "q")},
      {"lambda", real_entry(&RunConfig::lambda, "lambda")},
      {"sector", string_entry(&RunConfig::sector)},
      {"radius", real_entry(&RunConfig::radius, "radius")},
      {"nr", int_entry(&RunConfig::nr, "nr")},
      {"ntheta", int_entry(&RunConfig::ntheta, "ntheta")},
      {"max_iters", int_entry(&RunConfig::max_iters, "max_iters")},
      {"grad_tol", real_entry(&RunConfig::grad_tol, "grad_tol")},
      {"step", real_entry(&RunConfig::step, "step")},
      {"seed", string_entry(&RunConfig::seed)},
      {"seed_scale", real_entry(&RunConfig::seed_scale, "seed_scale")},
      {"newton", bool_entry(&RunConfig::newton, "newton")},
      {"trace", bool_entry(&RunConfig::trace, "trace")},
      {"lambdas", list_entry(&RunConfig::lambdas, "lambdas")},
      {"zeros", int_entry(&RunConfig::zeros, "zeros")},
      {"radial_rmax", real_entry(&RunConfig::radial_rmax, "radial_rmax")},
      {"radial_step", real_entry(&RunConfig::radial_step, "radial_step")},
      {"input", string_entry(&RunConfig::input)},
      {"nt", int_entry(&RunConfig::nt, "nt")},
      {"samples", int_entry(&RunConfig::samples, "samples")},
      {"backend", string_entry(&RunConfig::backend)},
      {"out", string_entry(&RunConfig::out)},
  };
  return table;
}

const Entry &lookup(std::string_view key)
{
  const auto &table = schema();
  const auto it = table.find(key);
  if (it == table.end())
  {
    fail(ErrorCode::kConfig, "unknown configuration key '" + std::string(key) + "'");
  }
  return it->second;
}

}  // namespace

const std::vector<std::string> &config_keys()
{
  static const std::vector<std::string> keys = []
  {
    std::vector<std::string> out;
    for (const auto &[k, e] : schema())
    {
      out.push_back(k);
    }
    return out;
  }();
  return keys;
}

void set_config_value(RunConfig &cfg, std::string_view key, std::string_view value)
{
  lookup(key).set(cfg, value);
  cfg.assigned.insert(std::string(key));
}

std::string get_config_value(const RunConfig &cfg, std::string_view key)
{
  return lookup(key).get(cfg);
}

RunConfig parse_config(std::string_view text)
{
  RunConfig cfg;
  int line_no = 0;
  while (!text.empty())
  {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
    {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty())
    {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
    {
      fail(ErrorCode::kConfig, "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    if (cfg.assigned.contains(std::string(key)))
    {
      fail(ErrorCode::kConfig, "line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'");
    }
    set_config_value(cfg, key, line.substr(eq + 1));
  }
  return cfg;
}

RunConfig load_config(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    fail(ErrorCode::kIo, "cannot open config file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig &cfg)
{
  std::string out;
  for (const std::string &key : cfg.assigned)
  {
    out += key + " = " + get_config_value(cfg, key) + "\n";
  }
  return out;
}

ModelParams model_params(const RunConfig &cfg)
{
  ModelParams mp{cfg.p, cfg.q, cfg.lambda};
  mp.validate();
  return mp;
}

GridPtr make_grid(const RunConfig &cfg)
{
  return make_grid(cfg, Sector::parse(cfg.sector));
}

GridPtr make_grid(const RunConfig &cfg, Sector sector)
{
  return build_grid(cfg.radius, cfg.nr, cfg.ntheta, sector);
}

SolveConfig solve_config(const RunConfig &cfg)
{
  SolveConfig sc;
  sc.max_iters = cfg.max_iters;
  sc.grad_tol = cfg.grad_tol;
  sc.step = cfg.step;
  sc.seed_kind = parse_seed_kind(cfg.seed);
  sc.seed_scale = cfg.seed_scale;
  sc.newton_refine = cfg.newton;
  sc.keep_trace = cfg.trace;
  return sc;
}

RadialOptions radial_options(const RunConfig &cfg)
{
  RadialOptions ro;
  ro.r_max = cfg.radial_rmax;
  ro.step = cfg.radial_step;
  ro.validate();
  return ro;
}

}  // namespace spiralnls
