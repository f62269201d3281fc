// SPDX-License-Identifier: Apache-2.0

#include <atomic>

#include "spiralnls/kernels.hpp"

namespace spiralnls::kernels
{

namespace
{

std::atomic<Backend> active_backend{Backend::kOpenMP};

bool use_omp()
{
  return active_backend.load(std::memory_order_relaxed) == Backend::kOpenMP;
}

}  // namespace

void set_backend(Backend b)
{
  active_backend.store(b, std::memory_order_relaxed);
}

Backend backend()
{
  return active_backend.load(std::memory_order_relaxed);
}

void row_transform(std::span<const double> in, std::span<double> out, std::size_t rows,
                   std::span<const double> matrix, std::size_t n_in, std::size_t n_out)
{
  if (use_omp())
  {
    omp::row_transform(in, out, rows, matrix, n_in, n_out);
  }
  else
  {
    serial::row_transform(in, out, rows, matrix, n_in, n_out);
  }
}

void tridiag_apply(const TridiagonalBank &bank, std::span<const double> x,
                   std::span<double> y)
{
  use_omp() ? omp::tridiag_apply(bank, x, y) : serial::tridiag_apply(bank, x, y);
}

void tridiag_solve(const TridiagonalBank &bank, std::span<const double> rhs,
                   std::span<double> x)
{
  use_omp() ? omp::tridiag_solve(bank, rhs, x) : serial::tridiag_solve(bank, rhs, x);
}

void signed_power(std::span<const double> u, double exponent, std::span<double> out)
{
  use_omp() ? omp::signed_power(u, exponent, out) : serial::signed_power(u, exponent, out);
}

double weighted_dot(std::span<const double> a, std::span<const double> b, std::size_t cols,
                    std::span<const double> row_weight)
{
  return use_omp() ? omp::weighted_dot(a, b, cols, row_weight)
                   : serial::weighted_dot(a, b, cols, row_weight);
}

double weighted_abs_pow(std::span<const double> a, double p, std::size_t cols,
                        std::span<const double> row_weight)
{
  return use_omp() ? omp::weighted_abs_pow(a, p, cols, row_weight)
                   : serial::weighted_abs_pow(a, p, cols, row_weight);
}

}  // namespace spiralnls::kernels
