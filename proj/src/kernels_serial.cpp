// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "spiralnls/kernels.hpp"

namespace spiralnls::kernels
{

TridiagonalBank::TridiagonalBank(std::size_t n_rows, std::size_t n_modes)
  : n(n_rows), modes(n_modes), lower(n_rows * n_modes, 0.0), diag(n_rows * n_modes, 0.0),
    upper(n_rows * n_modes, 0.0), inv_pivot(n_rows * n_modes, 0.0),
    c_prime(n_rows * n_modes, 0.0)
{
}

bool TridiagonalBank::factorize()
{
  for (std::size_t m = 0; m < modes; ++m)
  {
    double pivot = diag[m];
    if (pivot == 0.0 || !std::isfinite(pivot))
    {
      return false;
    }
    inv_pivot[m] = 1.0 / pivot;
    c_prime[m] = upper[m] * inv_pivot[m];
    for (std::size_t j = 1; j < n; ++j)
    {
      const std::size_t i = j * modes + m;
      pivot = diag[i] - lower[i] * c_prime[i - modes];
      if (pivot == 0.0 || !std::isfinite(pivot))
      {
        return false;
      }
      inv_pivot[i] = 1.0 / pivot;
      c_prime[i] = upper[i] * inv_pivot[i];
    }
  }
  return true;
}

namespace serial
{

void row_transform(std::span<const double> in, std::span<double> out, std::size_t rows,
                   std::span<const double> matrix, std::size_t n_in, std::size_t n_out)
{
  for (std::size_t j = 0; j < rows; ++j)
  {
    const double *row = in.data() + j * n_in;
    double *dst = out.data() + j * n_out;
    for (std::size_t i = 0; i < n_out; ++i)
    {
      const double *coef = matrix.data() + i * n_in;
      double acc = 0.0;
      for (std::size_t k = 0; k < n_in; ++k)
      {
        acc += coef[k] * row[k];
      }
      dst[i] = acc;
    }
  }
}

void tridiag_apply(const TridiagonalBank &bank, std::span<const double> x,
                   std::span<double> y)
{
  const std::size_t n = bank.n, modes = bank.modes;
  for (std::size_t m = 0; m < modes; ++m)
  {
    for (std::size_t j = 0; j < n; ++j)
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
  for (std::size_t m = 0; m < modes; ++m)
  {
    x[m] = rhs[m] * bank.inv_pivot[m];
    for (std::size_t j = 1; j < n; ++j)
    {
      const std::size_t i = j * modes + m;
      x[i] = (rhs[i] - bank.lower[i] * x[i - modes]) * bank.inv_pivot[i];
    }
    for (std::size_t j = n - 1; j > 0; --j)
    {
      const std::size_t i = (j - 1) * modes + m;
      x[i] -= bank.c_prime[i] * x[i + modes];
    }
  }
}

void signed_power(std::span<const double> u, double exponent, std::span<double> out)
{
  for (std::size_t i = 0; i < u.size(); ++i)
  {
    const double a = std::abs(u[i]);
    const double v = std::pow(a, exponent);
    out[i] = u[i] < 0.0 ? -v : (u[i] > 0.0 ? v : 0.0);
  }
}

double weighted_dot(std::span<const double> a, std::span<const double> b, std::size_t cols,
                    std::span<const double> row_weight)
{
  double total = 0.0;
  for (std::size_t j = 0; j < row_weight.size(); ++j)
  {
    double row = 0.0;
    for (std::size_t k = 0; k < cols; ++k)
    {
      row += a[j * cols + k] * b[j * cols + k];
    }
    total += row_weight[j] * row;
  }
  return total;
}

double weighted_abs_pow(std::span<const double> a, double p, std::size_t cols,
                        std::span<const double> row_weight)
{
  double total = 0.0;
  for (std::size_t j = 0; j < row_weight.size(); ++j)
  {
    double row = 0.0;
    for (std::size_t k = 0; k < cols; ++k)
    {
      row += std::pow(std::abs(a[j * cols + k]), p);
    }
    total += row_weight[j] * row;
  }
  return total;
}

}  // namespace serial
}  // namespace spiralnls::kernels
