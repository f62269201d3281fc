// SPDX-License-Identifier: Apache-2.0

#include <omp.h>

#include <algorithm>
#include <cmath>

#include "spiralnls/kernels.hpp"

namespace spiralnls::kernels::omp
{

namespace
{

// Modes handled per task in the tridiagonal sweeps.
constexpr std::size_t kModeBlock = 16;

}  // namespace

void row_transform(std::span<const double> in, std::span<double> out, std::size_t rows,
                   std::span<const double> matrix, std::size_t n_in, std::size_t n_out)
{
  const double *src = in.data();
  double *dst = out.data();
  const double *mat = matrix.data();
  const auto n_rows = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n_rows; ++j)
  {
    const double *row = src + j * n_in;
    double *dst_row = dst + j * n_out;
    for (std::size_t i = 0; i < n_out; ++i)
    {
      const double *coef = mat + i * n_in;
      double acc = 0.0;
      for (std::size_t k = 0; k < n_in; ++k)
      {
        acc += coef[k] * row[k];
      }
      dst_row[i] = acc;
    }
  }
}

void tridiag_apply(const TridiagonalBank &bank, std::span<const double> x,
                   std::span<double> y)
{
  const std::size_t n = bank.n, modes = bank.modes;
  const auto n_rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t jj = 0; jj < n_rows; ++jj)
  {
    const auto j = static_cast<std::size_t>(jj);
    for (std::size_t m = 0; m < modes; ++m)
    {
      const std::size_t i = j * modes + m;
      double acc = bank.diag[i] * x[i];
      if (j > 0)
      {
        acc += bank.lower[i] * x[i - modes];
      }
      if (j + 1 < n)
      {
        acc += bank.upper[i] * x[i + modes];
      }
      y[i] = acc;
    }
  }
}

void tridiag_solve(const TridiagonalBank &bank, std::span<const double> rhs,
                   std::span<double> x)
{
  const std::size_t n = bank.n, modes = bank.modes;
  const auto n_blocks = static_cast<std::ptrdiff_t>((modes + kModeBlock - 1) / kModeBlock);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < n_blocks; ++b)
  {
    const std::size_t m0 = static_cast<std::size_t>(b) * kModeBlock;
    const std::size_t m1 = std::min(modes, m0 + kModeBlock);
    for (std::size_t m = m0; m < m1; ++m)
    {
      x[m] = rhs[m] * bank.inv_pivot[m];
    }
    for (std::size_t j = 1; j < n; ++j)
    {
      for (std::size_t m = m0; m < m1; ++m)
      {
        const std::size_t i = j * modes + m;
        x[i] = (rhs[i] - bank.lower[i] * x[i - modes]) * bank.inv_pivot[i];
      }
    }
    for (std::size_t j = n - 1; j > 0; --j)
    {
      for (std::size_t m = m0; m < m1; ++m)
      {
        const std::size_t i = (j - 1) * modes + m;
        x[i] -= bank.c_prime[i] * x[i + modes];
      }
    }
  }
}

void signed_power(std::span<const double> u, double exponent, std::span<double> out)
{
  const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
  {
    const double a = std::abs(u[i]);
    const double v = std::pow(a, exponent);
    out[i] = u[i] < 0.0 ? -v : (u[i] > 0.0 ? v : 0.0);
  }
}

double weighted_dot(std::span<const double> a, std::span<const double> b, std::size_t cols,
                    std::span<const double> row_weight)
{
  const std::size_t rows = row_weight.size();
  std::vector<double> partial(rows);
  const auto n_rows = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n_rows; ++j)
  {
    double row = 0.0;
    for (std::size_t k = 0; k < cols; ++k)
    {
      row += a[j * cols + k] * b[j * cols + k];
    }
    partial[j] = row;
  }
  double total = 0.0;
  for (std::size_t j = 0; j < rows; ++j)
  {
    total += row_weight[j] * partial[j];
  }
  return total;
}

double weighted_abs_pow(std::span<const double> a, double p, std::size_t cols,
                        std::span<const double> row_weight)
{
  const std::size_t rows = row_weight.size();
  std::vector<double> partial(rows);
  const auto n_rows = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n_rows; ++j)
  {
    double row = 0.0;
    for (std::size_t k = 0; k < cols; ++k)
    {
      row += std::pow(std::abs(a[j * cols + k]), p);
    }
    partial[j] = row;
  }
  double total = 0.0;
  for (std::size_t j = 0; j < rows; ++j)
  {
    total += row_weight[j] * partial[j];
  }
  return total;
}

}  // namespace spiralnls::kernels::omp
