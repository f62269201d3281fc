// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "spiralnls/cli.hpp"
#include "spiralnls/config.hpp"
#include "spiralnls/minimize.hpp"
#include "spiralnls/report.hpp"
#include "spiralnls/spiral3d.hpp"
#include "spiralnls/text.hpp"
#include "support.hpp"

using namespace spiralnls;
using namespace spiralnls::testing;
namespace fs = std::filesystem;

namespace
{

// Fresh scratch directory per test case, removed afterwards.
struct TempDir
{
  fs::path path;
  TempDir()
  {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("spiralnls-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string &name) const { return (path / name).string(); }
};

struct CliRun
{
  int code = 0;
  std::string out, err;
};

CliRun cli(const std::vector<std::string> &args)
{
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

nlohmann::json read_json(const std::string &path)
{
  return nlohmann::json::parse(read_text_file(path));
}

const std::vector<std::string> kSmallGrid{"--radius", "24", "--nr", "256", "--ntheta", "32"};

std::vector<std::string> with_small_grid(std::vector<std::string> args)
{
  args.insert(args.end(), kSmallGrid.begin(), kSmallGrid.end());
  return args;
}

}  // namespace

TEST_CASE("text formatting round-trips")
{
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 5e-324, 0.0})
  {
    CHECK(same_bits(parse_real(format_real(x), "x"), x));
  }
  CHECK(format_real(1.0 / 3.0, 12) == "0.333333333333");
  CHECK_THROWS_AS(parse_real("1.0x", "x"), Error);
  CHECK_THROWS_AS(parse_real("", "x"), Error);
  CHECK(parse_int(" 42", "n") == 42);
  CHECK_THROWS_AS(parse_int("4.2", "n"), Error);
}

TEST_CASE("config parse and canonical serialization")
{
  const std::string text = "# run\n"
                           "  lambda = 2.50   # pitch\n"
                           "sector=half\n"
                           "lambdas = 0.05, 0.5,5 ,50\n"
                           "\n"
                           "newton = true\n"
                           "p = 4\n";
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.lambda == 2.5);
  CHECK(cfg.sector == "half");
  CHECK(cfg.lambdas == std::vector<double>{0.05, 0.5, 5.0, 50.0});
  CHECK(cfg.newton);
  CHECK(cfg.ntheta == 64);
  const std::string canonical = serialize_config(cfg);
  CHECK(canonical == "lambda = 2.5\n"
                     "lambdas = 0.05,0.5,5,50\n"
                     "newton = true\n"
                     "p = 4\n"
                     "sector = half\n");
  // serialize(parse(serialize(x))) is a fixed point, and parse recovers the values.
  CHECK(serialize_config(parse_config(canonical)) == canonical);
  CHECK(parse_config(canonical) == cfg);
}

TEST_CASE("config errors")
{
  const auto code_of = [](const std::string &text)
  {
    try
    {
      (void)parse_config(text);
    }
    catch (const Error &e)
    {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  CHECK(code_of("colour = red\n") == ErrorCode::kConfig);
  CHECK(code_of("p = four\n") == ErrorCode::kConfig);
  CHECK(code_of("p = 4\np = 5\n") == ErrorCode::kConfig);
  CHECK(code_of("lambdas = 1,,2\n") == ErrorCode::kConfig);
  CHECK(code_of("lambdas = 1,2,\n") == ErrorCode::kConfig);
  CHECK(code_of("newton = maybe\n") == ErrorCode::kConfig);
  CHECK(code_of("just words\n") == ErrorCode::kConfig);
  CHECK_THROWS_AS(load_config("/nonexistent/spiralnls.cfg"), Error);
}

TEST_CASE("every config key round-trips through get and set")
{
  RunConfig cfg;
  for (const std::string &key : config_keys())
  {
    RunConfig copy;
    set_config_value(copy, key, get_config_value(cfg, key));
    CHECK(get_config_value(copy, key) == get_config_value(cfg, key));
  }
}

TEST_CASE("solution files round-trip bit-exactly")
{
  TempDir dir;
  std::mt19937_64 rng(31);
  for (const Sector s : {Sector::full_disk(), Sector::half_disk(), Sector::cone(0.3)})
  {
    const GridPtr g = build_grid(7.25, 12, 6, s);
    Field u = random_nodal_field(g, rng);
    u.at(0, 0) = 5e-324;
    u.at(1, 1) = -1e300;
    u.at(2, 2) = 1.0 / 3.0;
    const StoredSolution in{u, {3.5, 0.0, 0.123456789}, "nodal", 1e-9, "dipole"};
    const std::string path = dir / ("sol-" + s.name() + ".csv");
    save_solution(path, in);
    const StoredSolution out = load_solution(path);
    CHECK(same_bits(out.field.values(), in.field.values()));
    CHECK(out.field.grid().same_as(*g));
    CHECK(same_bits(out.params.p, 3.5));
    CHECK(same_bits(out.params.lambda, 0.123456789));
    CHECK(out.params.q == 0.0);
    CHECK(out.kind == "nodal");
    CHECK(out.grad_tol == 1e-9);
    CHECK(out.seed == "dipole");
    CHECK(solution_to_csv(out) == solution_to_csv(in));
  }
}

TEST_CASE("malformed solution files are I/O errors")
{
  const GridPtr g = build_grid(2.0, 3, 4, Sector::full_disk());
  const std::string good = solution_to_csv({Field(g), {4.0, 1.0, 1.0}, "ground", 1e-8, "radial"});
  const auto code_of = [](const std::string &text)
  {
    try
    {
      (void)solution_from_csv(text);
    }
    catch (const Error &e)
    {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  CHECK_NOTHROW(solution_from_csv(good));
  std::string truncated = good.substr(0, good.rfind('\n', good.size() - 2) + 1);
  CHECK(code_of(truncated) == ErrorCode::kIo);
  std::string moved = good;
  moved.replace(moved.find("0,1,"), 4, "0,2,");
  CHECK(code_of(moved) == ErrorCode::kIo);
  CHECK(code_of("hello\n") == ErrorCode::kIo);
  std::string badkind = good;
  badkind.replace(badkind.find("kind,string,ground"), 18, "kind,string,weird");
  CHECK(code_of(badkind) == ErrorCode::kIo);
}

TEST_CASE("VTK export")
{
  TempDir dir;
  SUBCASE("constant 2x2x2 volume has eight data lines")
  {
    SpiralField3D f;
    f.nx = f.ny = f.nt = 2;
    f.spacing = {1.0, 1.0, 0.5};
    f.values.assign(8, 1.5);
    const std::string text = vtk_text(f);
    const auto header_end = text.find("LOOKUP_TABLE default\n");
    REQUIRE(header_end != std::string::npos);
    const std::string data = text.substr(header_end + 21);
    CHECK(std::count(data.begin(), data.end(), '\n') == 8);
    CHECK(data == "1.5\n1.5\n1.5\n1.5\n1.5\n1.5\n1.5\n1.5\n");
    CHECK(text.find("DIMENSIONS 2 2 2\n") != std::string::npos);
    CHECK(text.find("SCALARS v double 1\n") != std::string::npos);
  }
  SUBCASE("re-read values agree to twelve digits")
  {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n01;
    SpiralField3D f;
    f.nx = 3;
    f.ny = 4;
    f.nt = 5;
    f.origin = {-1.25, -2.0, 0.0};
    f.spacing = {0.1, 0.2, 0.3};
    for (int i = 0; i < 60; ++i)
    {
      f.values.push_back(n01(rng) * std::pow(10.0, i % 7 - 3));
    }
    const std::string path = dir / "f.vtk";
    export_vtk(f, path);
    const SpiralField3D g = read_vtk(path);
    CHECK(g.nx == 3);
    CHECK(g.ny == 4);
    CHECK(g.nt == 5);
    for (std::size_t i = 0; i < f.values.size(); ++i)
    {
      CHECK(std::abs(g.values[i] - f.values[i]) <= 5e-12 * std::abs(f.values[i]));
    }
    CHECK(std::abs(g.spacing[2] - 0.3) < 1e-12);
  }
  SUBCASE("inconsistent dimensions are rejected before writing")
  {
    SpiralField3D f;
    f.nx = 2;
    f.ny = 2;
    f.nt = 3;
    f.spacing = {1.0, 1.0, 1.0};
    f.values.assign(8, 0.0);
    const std::string path = dir / "bad.vtk";
    CHECK_THROWS_AS(export_vtk(f, path), Error);
    CHECK_FALSE(fs::exists(path));
  }
  SUBCASE("unwritable path carries the path")
  {
    SpiralField3D f;
    f.nx = f.ny = f.nt = 1;
    f.spacing = {1.0, 1.0, 1.0};
    f.values = {0.0};
    const std::string path = dir / "file-not-dir";
    write_text_file(path, "x");
    try
    {
      export_vtk(f, path + "/v.vtk");
      FAIL("expected an error");
    }
    catch (const Error &e)
    {
      CHECK(e.code() == ErrorCode::kIo);
      CHECK(std::string(e.what()).find("file-not-dir") != std::string::npos);
    }
  }
}

TEST_CASE("screw-invariant reconstruction")
{
  const double pi = std::numbers::pi;
  SUBCASE("radial profiles give t-independent fields")
  {
    const GridPtr g = build_grid(6.0, 32, 16, Sector::full_disk());
    const Field u = Field::from_function(g, [](double r, double) { return std::exp(-r * r); });
    const SpiralField3D f = reconstruct3d(u, {4.0, 1.0, 1.3}, 6, 9);
    for (int it = 1; it < f.nt; ++it)
    {
      for (int iy = 0; iy < f.ny; ++iy)
      {
        for (int ix = 0; ix < f.nx; ++ix)
        {
          CHECK(std::abs(f.values[f.index(ix, iy, it)] - f.values[f.index(ix, iy, 0)]) < 1e-14);
        }
      }
    }
    CHECK(f.spacing[2] == doctest::Approx(2 * pi * 1.3 / 6));
  }
  SUBCASE("periodicity and screw invariance of the evaluator")
  {
    std::mt19937_64 rng(12);
    const GridPtr g = build_grid(6.0, 48, 16, Sector::full_disk());
    const Field u = random_smooth_field(g, rng);
    const double lambda = 0.7;
    const SpiralEvaluator v(u, lambda);
    CHECK(v.period() == doctest::Approx(2 * pi * lambda));
    std::uniform_real_distribution<double> coord(-3.0, 3.0), ang(-pi, pi);
    for (int i = 0; i < 50; ++i)
    {
      const double x = coord(rng), y = coord(rng), t = coord(rng), th = ang(rng);
      const double base = v(x, y, t);
      CHECK(std::abs(v(x, y, t + v.period()) - base) < 1e-12);
      const double xr = std::cos(th) * x - std::sin(th) * y;
      const double yr = std::sin(th) * x + std::cos(th) * y;
      CHECK(std::abs(v(xr, yr, t + lambda * th) - base) < 1e-10);
    }
  }
  SUBCASE("sampled field matches the pointwise evaluator")
  {
    std::mt19937_64 rng(13);
    const GridPtr g = build_grid(6.0, 48, 16, Sector::full_disk());
    const Field u = random_smooth_field(g, rng);
    const ModelParams params{4.0, 1.0, 2.0};
    const SpiralField3D f = reconstruct3d(u, params, 4, 7);
    const SpiralEvaluator v(u, params.lambda);
    for (int it = 0; it < f.nt; ++it)
    {
      for (int iy = 0; iy < f.ny; ++iy)
      {
        for (int ix = 0; ix < f.nx; ++ix)
        {
          const double x = f.origin[0] + ix * f.spacing[0];
          const double y = f.origin[1] + iy * f.spacing[1];
          const double t = it * f.spacing[2];
          if (std::hypot(x, y) < 6.0 * (1 - 1e-12))
          {
            CHECK(std::abs(f.values[f.index(ix, iy, it)] - v(x, y, t)) < 1e-12);
          }
        }
      }
    }
  }
  SUBCASE("odd-extended half-disk ground state vanishes on the helicoid")
  {
    const GridPtr half = build_grid(20.0, 256, 32, Sector::half_disk());
    const ModelParams params{4.0, 1.0, 2.0};
    const SolveReport rep = solve_ground(half, params, SolveConfig{});
    REQUIRE(rep.converged);
    const SpiralEvaluator v(rep.field, params.lambda);
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> s(-19.0, 19.0), tau(-10.0, 10.0);
    double worst = 0.0, typical = 0.0;
    for (int i = 0; i < 100; ++i)
    {
      const auto pt = helicoid_point(s(rng), tau(rng), params.lambda);
      worst = std::max(worst, std::abs(v(pt[0], pt[1], pt[2])));
      // Same radius and height, a quarter turn away: on the bulk of the field.
      typical = std::max(typical, std::abs(v(pt[1], -pt[0], pt[2])));
    }
    CHECK(worst < 1e-6 * rep.linf);
    CHECK(typical > 0.1 * rep.linf);
  }
  CHECK_THROWS_AS(reconstruct3d(Field(build_grid(1.0, 4, 4, Sector::cone(1.0))), {4.0, 1.0, 1.0}, 4, 4), Error);
}

TEST_CASE("report JSON keeps full precision")
{
  const GridPtr g = build_grid(12.0, 96, 16, Sector::half_disk());
  const ModelParams params{4.0, 1.0, 2.0};
  const SolveReport rep = solve_ground(g, params, SolveConfig{});
  const Json j = to_json(rep, params);
  const auto parsed = nlohmann::json::parse(j.dump());
  CHECK(same_bits(parsed["energy"]["total"].get<double>(), rep.energy.total));
  CHECK(parsed["converged"].get<bool>());
  CHECK(parsed["grid"]["sector"] == "half");
  CHECK(parsed["symmetry"]["angular_monotone"].get<bool>());
  CHECK(parsed["symmetry"]["nonradiality"].is_null());
}

TEST_CASE("CLI usage and exit codes")
{
  TempDir dir;
  SUBCASE("missing subcommand")
  {
    const CliRun r = cli({});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("Usage") != std::string::npos);
  }
  SUBCASE("unknown option and bad values")
  {
    CHECK(cli({"solve-ground", "--colour", "red"}).code == kExitUsage);
    CHECK(cli({"solve-ground", "--p", "four", "--out", dir / "x"}).code == kExitUsage);
    CHECK(cli({"solve-ground", "--p", "1.5", "--out", dir / "x"}).code == kExitUsage);
    CHECK(cli({"sweep", "--out", dir / "x"}).code == kExitUsage);
    CHECK(cli({"solve-ground", "--backend", "gpu", "--out", dir / "x"}).code == kExitUsage);
  }
  SUBCASE("missing files")
  {
    CHECK(cli({"check", "--input", dir / "absent.csv", "--out", dir / "x"}).code == kExitIo);
    CHECK(cli({"solve-ground", "--config", dir / "absent.cfg"}).code == kExitIo);
  }
  SUBCASE("help")
  {
    const CliRun r = cli({"--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("solve-ground") != std::string::npos);
  }
  CHECK(exit_code_for(ErrorCode::kIo) == kExitIo);
  CHECK(exit_code_for(ErrorCode::kConfig) == kExitUsage);
  CHECK(exit_code_for(ErrorCode::kMaxItersExceeded) == kExitNumerical);
  CHECK(exit_code_for(ErrorCode::kOnePhaseMissing) == kExitNumerical);
}

TEST_CASE("CLI half-disk ground solve end to end")
{
  TempDir dir;
  const std::string out = dir / "run";
  const CliRun r = cli({"solve-ground", "--p", "4", "--q", "1", "--lambda", "2", "--sector", "half",
                        "--out", out});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("solve-ground: converged") != std::string::npos);
  const auto report = read_json(out + "/report.json");
  CHECK(report["converged"].get<bool>());
  // Same configuration through the library directly.
  const SolveReport lib = solve_ground(build_grid(30.0, 512, 64, Sector::half_disk()),
                                       {4.0, 1.0, 2.0}, SolveConfig{});
  CHECK(same_bits(report["energy"]["total"].get<double>(), lib.energy.total));
  CHECK(std::abs(lib.energy.total - 8.72069) < 1e-4);

  const auto manifest = read_json(out + "/manifest.json");
  CHECK(manifest["command"] == "solve-ground");
  CHECK(manifest["version"] == artifact_version());
  CHECK(manifest["params"]["lambda"].get<double>() == 2.0);
  CHECK(manifest["grid"]["sector"] == "half");
  CHECK(manifest["tolerances"]["grad_tol"].get<double>() == 1e-8);
  CHECK(manifest["config"]["seed"] == "radial");

  SUBCASE("check passes on the stored solution")
  {
    const CliRun c = cli({"check", "--input", out + "/solution.csv", "--out", dir / "chk"});
    CHECK(c.code == kExitOk);
    CHECK(read_json(dir / "chk/check.json")["ok"].get<bool>());
  }
  SUBCASE("check names the invariant broken by a corrupted value")
  {
    StoredSolution s = load_solution(out + "/solution.csv");
    s.field.at(40, 10) += 0.01;
    save_solution(dir / "bad.csv", s);
    const CliRun c = cli({"check", "--input", dir / "bad.csv", "--out", dir / "chk"});
    CHECK(c.code == kExitCheckFailed);
    CHECK(c.out.find("criticality_residual") != std::string::npos);
  }
  SUBCASE("check flags a sign change in a ground state")
  {
    StoredSolution s = load_solution(out + "/solution.csv");
    s.grad_tol = 1.0;  // isolate the sign test
    s.field.at(3, 3) = -0.5 * s.field.max_abs();
    save_solution(dir / "neg.csv", s);
    const CliRun c = cli({"check", "--input", dir / "neg.csv", "--out", dir / "chk"});
    CHECK(c.code == kExitCheckFailed);
    CHECK(c.out.find("ground_one_signed") != std::string::npos);
  }
  SUBCASE("non-finite values")
  {
    std::string text = read_text_file(out + "/solution.csv");
    const auto pos = text.rfind(',');
    text = text.substr(0, pos + 1) + "nan\n";
    write_text_file(dir / "nan.csv", text);
    const CliRun c = cli({"check", "--input", dir / "nan.csv", "--out", dir / "chk"});
    CHECK(c.code == kExitCheckFailed);
    CHECK(c.out.find("finite_values") != std::string::npos);
  }
  SUBCASE("reconstruct writes a VTK volume")
  {
    const CliRun c = cli({"reconstruct", "--input", out + "/solution.csv", "--nt", "4", "--samples",
                          "8", "--out", dir / "rec"});
    CHECK(c.code == kExitOk);
    const SpiralField3D f = read_vtk(dir / "rec/spiral.vtk");
    CHECK(f.nx == 8);
    CHECK(f.nt == 4);
  }
}

TEST_CASE("CLI output directory precedence")
{
  TempDir dir;
  const std::string cfg_path = dir / "run.cfg";
  write_text_file(cfg_path, "zeros = 0\nradial_step = 0.02\n");
  ::setenv(kOutEnv, (dir / "from-env").c_str(), 1);
  CHECK(cli({"solve-radial", "--config", cfg_path}).code == kExitOk);
  CHECK(fs::exists(dir / "from-env/radial.json"));
  CHECK(cli({"solve-radial", "--config", cfg_path, "--out", dir / "from-flag"}).code == kExitOk);
  CHECK(fs::exists(dir / "from-flag/radial.json"));
  write_text_file(cfg_path, "out = " + (dir / "from-config") + "\n");
  CHECK(cli({"solve-radial", "--config", cfg_path}).code == kExitOk);
  CHECK(fs::exists(dir / "from-config/radial.json"));
  CHECK(cli({"solve-radial", "--config", cfg_path, "--out", dir / "flag-wins"}).code == kExitOk);
  CHECK(fs::exists(dir / "flag-wins/radial.json"));
  ::unsetenv(kOutEnv);
}

TEST_CASE("CLI studies on small grids")
{
  TempDir dir;
  SUBCASE("nodal solve and check")
  {
    const CliRun r = cli(with_small_grid({"solve-nodal", "--lambda", "5", "--newton", "true", "--out", dir / "n"}));
    REQUIRE(r.code == kExitOk);
    const auto rep = read_json(dir / "n/report.json");
    CHECK(rep["seed"] == "dipole");
    CHECK(cli({"check", "--input", dir / "n/solution.csv", "--out", dir / "nc"}).code == kExitOk);
  }
  SUBCASE("sweep tables")
  {
    const CliRun r = cli(with_small_grid({"sweep", "--lambdas", "0.1,5", "--newton", "true", "--out", dir / "s"}));
    REQUIRE(r.code == kExitOk);
    const auto j = read_json(dir / "s/sweep.json");
    CHECK(j["records"].size() == 2);
    CHECK(j["bracket"]["transitions"] == 1);
    const std::string csv = read_text_file(dir / "s/sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  }
  SUBCASE("identical configs give identical reports")
  {
    const auto args = with_small_grid({"solve-ground", "--sector", "half", "--lambda", "3"});
    auto a = args, b = args;
    a.insert(a.end(), {"--out", dir / "a"});
    b.insert(b.end(), {"--out", dir / "b"});
    REQUIRE(cli(a).code == kExitOk);
    REQUIRE(cli(b).code == kExitOk);
    CHECK(read_text_file(dir / "a/report.json") == read_text_file(dir / "b/report.json"));
    CHECK(read_text_file(dir / "a/solution.csv") == read_text_file(dir / "b/solution.csv"));
  }
  SUBCASE("custom seed from a stored solution")
  {
    REQUIRE(cli(with_small_grid({"solve-ground", "--sector", "half", "--lambda", "3", "--grad_tol", "1e-4", "--out", dir / "c0"})).code == kExitOk);
    const CliRun r = cli(with_small_grid({"solve-ground", "--sector", "half", "--lambda", "3", "--seed", "custom", "--input", dir / "c0/solution.csv", "--out", dir / "c1"}));
    CHECK(r.code == kExitOk);
    CHECK(read_json(dir / "c1/report.json")["seed"] == "custom");
  }
  SUBCASE("iteration cap exits with the numerical status")
  {
    const CliRun r = cli(with_small_grid({"solve-ground", "--max_iters", "2", "--out", dir / "cap"}));
    CHECK(r.code == kExitNumerical);
    CHECK(fs::exists(dir / "cap/report.json"));
  }
}
