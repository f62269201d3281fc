// SPDX-License-Identifier: Apache-2.0

#include "spiralnls/radial_oracle.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

#include "spiralnls/errors.hpp"

namespace spiralnls
{

void RadialOptions::validate() const
{
  require(r_max > 0.0 && std::isfinite(r_max), "radial r_max must be positive");
  require(step > 0.0 && step < r_max / 4.0, "radial step must be in (0, r_max/4)");
  require(rtol > 0.0 && rtol < 1e-3, "radial rtol must be in (0, 1e-3)");
  require(start > 0.0 && start < step, "radial start radius must be in (0, step)");
  require(bisection_iters > 0, "bisection_iters must be positive");
}

namespace
{

struct State
{
  double u;
  double v;
};

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

enum class Verdict
{
  kTooLow,
  kTooHigh,
  kUndecided,
};

class Shooter
{
public:
  Shooter(double p, int zeros, const RadialOptions &opts) : p_(p), zeros_(zeros), opts_(opts)
  {
    n_ = static_cast<int>(std::lround(opts.r_max / opts.step));
    n_ += n_ % 2;
    h_out_ = opts.r_max / n_;
  }

  int samples() const { return n_ + 1; }
  double spacing() const { return h_out_; }

  // Integrates from the origin with central value a. When `u_out` is given,
  // fills uniform samples up to the event and returns the number filled.
  Verdict run(double a, std::vector<double> *u_out, std::vector<double> *v_out,
              int *filled) const
  {
    const double eps = opts_.start;
    const double curv = (a - std::pow(a, p_ - 1.0)) / 4.0;
    double r = eps;
    State y{a + curv * eps * eps, 2.0 * curv * eps};
    State f = rhs(r, y);
    int next = 1;
    if (u_out)
    {
      (*u_out)[0] = a;
      (*v_out)[0] = 0.0;
    }
    int zeros = 0;
    bool past_extremum = y.u * y.v <= 0.0;
    if (!past_extremum)
    {
      if (filled)
      {
        *filled = 1;
      }
      return Verdict::kTooLow;
    }
    double h = std::min(opts_.step, 1e-3);
    Verdict verdict = Verdict::kUndecided;
    while (r < opts_.r_max)
    {
      h = std::min({h, opts_.step, opts_.r_max - r});
      State y1{};
      State f1{};
      double err = 0.0;
      step(r, y, f, h, y1, f1, err);
      if (!(err <= 1.0))
      {
        const double fac = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
        h *= fac;
        if (h < 1e-14)
        {
          fail(ErrorCode::kBisectionBracketFailure, "radial integrator step underflow");
        }
        continue;
      }
      const double r1 = r + h;
      if (u_out)
      {
        while (next <= n_ && next * h_out_ <= r1 + 1e-14 * r1)
        {
          const double s = (next * h_out_ - r) / h;
          const double s2 = s * s, s3 = s2 * s;
          const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
          const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
          (*u_out)[next] = h00 * y.u + h10 * h * y.v + h01 * y1.u + h11 * h * y1.v;
          (*v_out)[next] = h00 * y.v + h10 * h * f.v + h01 * y1.v + h11 * h * f1.v;
          ++next;
        }
      }
      if (y.u * y1.u < 0.0 || y1.u == 0.0)
      {
        ++zeros;
        past_extremum = false;
        if (zeros > zeros_)
        {
          verdict = Verdict::kTooHigh;
        }
      }
      if (verdict == Verdict::kUndecided)
      {
        if (!past_extremum && y1.u * y1.v < 0.0)
        {
          past_extremum = true;
        }
        else if (past_extremum && y1.u * y1.v > 0.0)
        {
          verdict = Verdict::kTooLow;
        }
      }
      r = r1;
      y = y1;
      f = f1;
      if (verdict != Verdict::kUndecided)
      {
        break;
      }
      h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-30), -0.2)));
    }
    if (filled)
    {
      *filled = next;
    }
    return verdict;
  }

private:
  State rhs(double r, const State &y) const
  {
    const double nl = std::copysign(std::pow(std::abs(y.u), p_ - 1.0), y.u);
    return {y.v, -y.v / r + y.u - nl};
  }

  void step(double r, const State &y, const State &k1, double h, State &y1, State &k7,
            double &err) const
  {
    const auto at = [&](double cr, double du, double dv)
    { return rhs(r + cr * h, State{y.u + h * du, y.v + h * dv}); };
    const State k2 = at(c2, a21 * k1.u, a21 * k1.v);
    const State k3 = at(c3, a31 * k1.u + a32 * k2.u, a31 * k1.v + a32 * k2.v);
    const State k4 = at(c4, a41 * k1.u + a42 * k2.u + a43 * k3.u,
                        a41 * k1.v + a42 * k2.v + a43 * k3.v);
    const State k5 = at(c5, a51 * k1.u + a52 * k2.u + a53 * k3.u + a54 * k4.u,
                        a51 * k1.v + a52 * k2.v + a53 * k3.v + a54 * k4.v);
    const State k6 = at(1.0, a61 * k1.u + a62 * k2.u + a63 * k3.u + a64 * k4.u + a65 * k5.u,
                        a61 * k1.v + a62 * k2.v + a63 * k3.v + a64 * k4.v + a65 * k5.v);
    y1.u = y.u + h * (b1 * k1.u + b3 * k3.u + b4 * k4.u + b5 * k5.u + b6 * k6.u);
    y1.v = y.v + h * (b1 * k1.v + b3 * k3.v + b4 * k4.v + b5 * k5.v + b6 * k6.v);
    k7 = rhs(r + h, y1);
    const double eu = h * (e1 * k1.u + e3 * k3.u + e4 * k4.u + e5 * k5.u + e6 * k6.u + e7 * k7.u);
    const double ev = h * (e1 * k1.v + e3 * k3.v + e4 * k4.v + e5 * k5.v + e6 * k6.v + e7 * k7.v);
    const double atol = 1e-3 * opts_.rtol;
    const double su = atol + opts_.rtol * std::max(std::abs(y.u), std::abs(y1.u));
    const double sv = atol + opts_.rtol * std::max(std::abs(y.v), std::abs(y1.v));
    err = std::max(std::abs(eu) / su, std::abs(ev) / sv);
  }

  double p_;
  int zeros_;
  RadialOptions opts_;
  int n_ = 0;
  double h_out_ = 0.0;
};

double simpson(const std::vector<double> &f, double h)
{
  const std::size_t n = f.size() - 1;
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i < n; ++i)
  {
    (i % 2 ? odd : even) += f[i];
  }
  return h / 3.0 * (f.front() + 4.0 * odd + 2.0 * even + f.back());
}

RadialProfile shoot(double p, int zeros, const RadialOptions &opts)
{
  require(p > 2.0 && std::isfinite(p), "radial shooting needs p > 2");
  require(zeros >= 0, "number of zeros must be nonnegative");
  opts.validate();
  const Shooter shooter(p, zeros, opts);

  // Amplitudes at or below 1 never reach zero (the well around u = 1 traps them).
  double lo = 1.0;
  double hi = 2.0;
  int doublings = 0;
  while (shooter.run(hi, nullptr, nullptr, nullptr) != Verdict::kTooHigh)
  {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 60)
    {
      fail(ErrorCode::kBisectionBracketFailure, "no upper amplitude bracket found");
    }
  }
  for (int it = 0; it < opts.bisection_iters; ++it)
  {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
    {
      break;
    }
    (shooter.run(mid, nullptr, nullptr, nullptr) == Verdict::kTooHigh ? hi : lo) = mid;
  }

  const int n = shooter.samples();
  std::vector<double> ulo(n, 0.0), vlo(n, 0.0), uhi(n, 0.0), vhi(n, 0.0);
  int flo = 0, fhi = 0;
  shooter.run(lo, &ulo, &vlo, &flo);
  shooter.run(hi, &uhi, &vhi, &fhi);
  const int common = std::min(flo, fhi);

  // Matching index: last sample where the bracketing trajectories still agree.
  int match = 0;
  int seen_zeros = 0;
  int match_zeros = 0;
  for (int i = 1; i < common; ++i)
  {
    if (ulo[i - 1] * ulo[i] < 0.0)
    {
      ++seen_zeros;
    }
    if (std::abs(uhi[i] - ulo[i]) > 1e-8 * std::abs(ulo[i]))
    {
      break;
    }
    match = i;
    match_zeros = seen_zeros;
  }
  if (match_zeros != zeros || match == 0)
  {
    fail(ErrorCode::kBisectionBracketFailure, "shooting trajectories separate before the decay region");
  }

  RadialProfile prof;
  prof.kind = zeros == 0 ? ProfileKind::kGround : ProfileKind::kNodal;
  prof.zeros = zeros;
  prof.p = p;
  prof.amplitude = lo;
  const double h = shooter.spacing();
  prof.match_radius = match * h;
  prof.radii.resize(n);
  prof.values.resize(n);
  prof.derivatives.resize(n);
  const double k0m = std::cyl_bessel_k(0.0, prof.match_radius);
  const double um = ulo[match];
  for (int i = 0; i < n; ++i)
  {
    const double r = i * h;
    prof.radii[i] = r;
    if (i <= match)
    {
      prof.values[i] = ulo[i];
      prof.derivatives[i] = vlo[i];
    }
    else
    {
      prof.values[i] = um * std::cyl_bessel_k(0.0, r) / k0m;
      prof.derivatives[i] = -um * std::cyl_bessel_k(1.0, r) / k0m;
    }
  }
  if (!(std::abs(prof.values.back()) < 1e-10))
  {
    fail(ErrorCode::kBisectionBracketFailure, "radial profile does not decay below 1e-10");
  }

  std::vector<double> fg(n), fm(n), fl(n);
  for (int i = 0; i < n; ++i)
  {
    const double r = prof.radii[i];
    fg[i] = prof.derivatives[i] * prof.derivatives[i] * r;
    fm[i] = prof.values[i] * prof.values[i] * r;
    fl[i] = std::pow(std::abs(prof.values[i]), p) * r;
  }
  const double two_pi = 2.0 * std::numbers::pi;
  prof.gradient_sq = two_pi * simpson(fg, h);
  prof.mass = two_pi * simpson(fm, h);
  prof.lp = two_pi * simpson(fl, h);
  prof.energy = 0.5 * (prof.gradient_sq + prof.mass) - prof.lp / p;
  return prof;
}

}  // namespace

double RadialProfile::value_at(double r) const
{
  require(r >= 0.0, "radial profile evaluated at negative radius");
  const double h = radii[1] - radii[0];
  const std::size_t last = radii.size() - 1;
  if (r >= radii[last])
  {
    return 0.0;
  }
  const std::size_t i = std::min(static_cast<std::size_t>(r / h), last - 1);
  const double s = (r - radii[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * values[i] + (s3 - 2 * s2 + s) * h * derivatives[i] +
         (-2 * s3 + 3 * s2) * values[i + 1] + (s3 - s2) * h * derivatives[i + 1];
}

double RadialProfile::derivative_at(double r) const
{
  require(r >= 0.0, "radial profile evaluated at negative radius");
  const double h = radii[1] - radii[0];
  const std::size_t last = radii.size() - 1;
  if (r >= radii[last])
  {
    return 0.0;
  }
  const std::size_t i = std::min(static_cast<std::size_t>(r / h), last - 1);
  const double s = (r - radii[i]) / h;
  const double s2 = s * s;
  return ((6 * s2 - 6 * s) * values[i] + (-6 * s2 + 6 * s) * values[i + 1]) / h +
         (3 * s2 - 4 * s + 1) * derivatives[i] + (3 * s2 - 2 * s) * derivatives[i + 1];
}

std::string RadialProfile::to_csv() const
{
  std::string out = "r,u\n";
  std::array<char, 64> buf{};
  for (std::size_t i = 0; i < radii.size(); ++i)
  {
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), radii[i]);
    out.append(buf.data(), res.ptr);
    out.push_back(',');
    res = std::to_chars(buf.data(), buf.data() + buf.size(), values[i]);
    out.append(buf.data(), res.ptr);
    out.push_back('\n');
  }
  return out;
}

RadialProfile shoot_ground(double p, const RadialOptions &opts)
{
  return shoot(p, 0, opts);
}

RadialProfile shoot_nodal(double p, int zeros, const RadialOptions &opts)
{
  require(zeros >= 1, "nodal profile needs at least one zero");
  return shoot(p, zeros, opts);
}

LimitLevels limit_levels(double p, const RadialOptions &opts)
{
  LimitLevels out;
  out.c_inf = shoot_ground(p, opts).energy;
  out.radial_nodal_energy = shoot_nodal(p, 1, opts).energy;
  out.eps_star = out.radial_nodal_energy - 2.0 * out.c_inf;
  return out;
}

}  // namespace spiralnls
