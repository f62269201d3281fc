// SPDX-License-Identifier: Apache-2.0

#include "spiralnls/spiral3d.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spiralnls/errors.hpp"
#include "spiralnls/solution_io.hpp"
#include "spiralnls/text.hpp"

namespace spiralnls
{

namespace
{

constexpr double kPi = std::numbers::pi;

Field as_full_disk(const Field &u)
{
  switch (u.grid().sector().kind)
  {
  case SectorKind::kFullDisk:
    return u;
  case SectorKind::kHalfDisk:
    return odd_extend_half_disk(u);
  case SectorKind::kCone:
    break;
  }
  fail(ErrorCode::kInvalidArgument, "spiral reconstruction needs a full-disk or half-disk profile");
}

// Real Fourier basis of the full disk at angle theta, ordered like the grid modes.
void fourier_basis(const PolarGrid &g, double theta, std::vector<double> &out)
{
  const std::size_t modes = g.modes();
  out.resize(modes);
  for (std::size_t m = 0; m < modes; ++m)
  {
    const int order = g.mode_order(m);
    const bool is_sine = (m > 0) && (m % 2 == 0) && (m + 1 != modes);
    out[m] = is_sine ? std::sin(order * theta) : std::cos(order * theta);
  }
}

}  // namespace

void SpiralField3D::validate() const
{
  require(nx >= 1 && ny >= 1 && nt >= 1, "3D field needs positive sample counts");
  require(values.size() == static_cast<std::size_t>(nx) * ny * nt,
          "3D field has " + std::to_string(values.size()) + " values for dimensions " +
              std::to_string(nx) + "x" + std::to_string(ny) + "x" + std::to_string(nt));
  for (double h : spacing)
  {
    require(std::isfinite(h) && h > 0.0, "3D field spacing must be positive");
  }
}

SpiralEvaluator::SpiralEvaluator(const Field &u, double lambda)
    : full_(as_full_disk(u)), interp_(full_), lambda_(lambda)
{
  require(std::isfinite(lambda) && lambda > 0.0, "pitch must be positive");
}

double SpiralEvaluator::operator()(double x, double y, double t) const
{
  const double r = std::hypot(x, y);
  const double phi = std::atan2(y, x);
  return interp_(r, phi - t / lambda_);
}

double SpiralEvaluator::period() const
{
  return 2.0 * kPi * lambda_;
}

SpiralField3D reconstruct3d(const Field &u, const ModelParams &params, int nt, int samples)
{
  params.validate();
  require(nt >= 1, "reconstruction needs nt >= 1");
  require(samples >= 2, "reconstruction needs at least 2 samples per axis");
  const Field full = as_full_disk(u);
  const PolarGrid &g = full.grid();
  const FieldInterpolant interp(full);

  const double half = g.radius() / std::numbers::sqrt2;
  const double h = 2.0 * half / (samples - 1);
  const double dt = 2.0 * kPi * params.lambda / nt;

  SpiralField3D out;
  out.nx = samples;
  out.ny = samples;
  out.nt = nt;
  out.origin = {-half, -half, 0.0};
  out.spacing = {h, h, dt};
  out.values.assign(static_cast<std::size_t>(samples) * samples * nt, 0.0);

  const std::size_t modes = g.modes();
  std::vector<double> basis;
  for (int iy = 0; iy < samples; ++iy)
  {
    const double y = -half + iy * h;
    for (int ix = 0; ix < samples; ++ix)
    {
      const double x = -half + ix * h;
      // Corners sit exactly on r = R up to rounding; clamp so they evaluate to 0.
      const double r = std::min(std::hypot(x, y), g.radius());
      const double phi = std::atan2(y, x);
      const std::vector<double> c = interp.modes_at(r);
      for (int it = 0; it < nt; ++it)
      {
        fourier_basis(g, phi - it * dt / params.lambda, basis);
        double v = 0.0;
        for (std::size_t m = 0; m < modes; ++m)
        {
          v += c[m] * basis[m];
        }
        out.values[out.index(ix, iy, it)] = v;
      }
    }
  }
  return out;
}

std::array<double, 3> helicoid_point(double s, double tau, double lambda)
{
  return {-s * std::sin(tau), s * std::cos(tau), lambda * tau};
}

std::string vtk_text(const SpiralField3D &f)
{
  f.validate();
  std::string out;
  out += "# vtk DataFile Version 3.0\n";
  out += "spiralnls screw-invariant field\n";
  out += "ASCII\n";
  out += "DATASET STRUCTURED_POINTS\n";
  out += "DIMENSIONS " + std::to_string(f.nx) + " " + std::to_string(f.ny) + " " +
         std::to_string(f.nt) + "\n";
  out += "ORIGIN " + format_real(f.origin[0], 12) + " " + format_real(f.origin[1], 12) + " " +
         format_real(f.origin[2], 12) + "\n";
  out += "SPACING " + format_real(f.spacing[0], 12) + " " + format_real(f.spacing[1], 12) +
         " " + format_real(f.spacing[2], 12) + "\n";
  out += "POINT_DATA " + std::to_string(f.values.size()) + "\n";
  out += "SCALARS v double 1\n";
  out += "LOOKUP_TABLE default\n";
  for (double v : f.values)
  {
    out += format_real(v, 12);
    out += '\n';
  }
  return out;
}

void export_vtk(const SpiralField3D &f, const std::string &path)
{
  write_text_file(path, vtk_text(f));
}

SpiralField3D read_vtk(const std::string &path)
{
  std::istringstream in(read_text_file(path));
  std::string line;
  const auto expect = [&](const std::string &prefix)
  {
    if (!std::getline(in, line) || !line.starts_with(prefix))
    {
      fail(ErrorCode::kIo, path + ": expected '" + prefix + "'");
    }
  };
  const auto three = [&](std::string_view rest)
  {
    std::array<std::string, 3> parts;
    std::istringstream ss{std::string(rest)};
    for (auto &p : parts)
    {
      if (!(ss >> p))
      {
        fail(ErrorCode::kIo, path + ": expected three numbers in '" + line + "'");
      }
    }
    return parts;
  };
  SpiralField3D f;
  try
  {
    expect("# vtk DataFile");
    expect("");
    expect("ASCII");
    expect("DATASET STRUCTURED_POINTS");
    expect("DIMENSIONS ");
    auto d = three(std::string_view(line).substr(11));
    f.nx = static_cast<int>(parse_int(d[0], "nx"));
    f.ny = static_cast<int>(parse_int(d[1], "ny"));
    f.nt = static_cast<int>(parse_int(d[2], "nt"));
    expect("ORIGIN ");
    d = three(std::string_view(line).substr(7));
    for (int i = 0; i < 3; ++i)
    {
      f.origin[i] = parse_real(d[i], "origin");
    }
    expect("SPACING ");
    d = three(std::string_view(line).substr(8));
    for (int i = 0; i < 3; ++i)
    {
      f.spacing[i] = parse_real(d[i], "spacing");
    }
    expect("POINT_DATA ");
    const long long count = parse_int(std::string_view(line).substr(11), "point count");
    expect("SCALARS v ");
    expect("LOOKUP_TABLE");
    f.values.reserve(static_cast<std::size_t>(count));
    while (std::getline(in, line))
    {
      if (!line.empty())
      {
        f.values.push_back(parse_real(line, "value"));
      }
    }
    f.validate();
  }
  catch (const Error &e)
  {
    if (e.code() == ErrorCode::kIo)
    {
      throw;
    }
    fail(ErrorCode::kIo, path + ": " + e.message());
  }
  return f;
}

}  // namespace spiralnls
