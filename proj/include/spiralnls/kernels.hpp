// SPDX-License-Identifier: Apache-2.0
//
// Data-parallel inner loops of the solver. Every kernel exists twice: a plain
// serial reference in `serial::` and an OpenMP version in `omp::`. Both perform
// identical floating-point operations per output element, so results agree
// bit-for-bit. Reductions accumulate one partial per radial row and combine the
// partials serially in row order, which keeps them independent of the thread
// count.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spiralnls::kernels
{

enum class Backend
{
  kSerial,
  kOpenMP,
};

void set_backend(Backend backend);
Backend backend();

// Tridiagonal systems along the radial index, one independent system per
// angular mode. Storage is interleaved: entry (j, m) lives at j * modes + m,
// matching the layout of spectral coefficient arrays.
struct TridiagonalBank
{
  std::size_t n = 0;
  std::size_t modes = 0;
  std::vector<double> lower;  // couples row j to j - 1; lower(0, m) unused
  std::vector<double> diag;
  std::vector<double> upper;  // couples row j to j + 1; upper(n - 1, m) unused
  std::vector<double> inv_pivot;
  std::vector<double> c_prime;

  TridiagonalBank() = default;
  TridiagonalBank(std::size_t n_rows, std::size_t n_modes);

  // Thomas factorization; returns false if a pivot vanishes.
  bool factorize();
};

namespace serial
{

// out(j, i) = sum_k matrix(i, k) * in(j, k); matrix is n_out x n_in row-major.
void row_transform(std::span<const double> in, std::span<double> out, std::size_t rows,
                   std::span<const double> matrix, std::size_t n_in, std::size_t n_out);
void tridiag_apply(const TridiagonalBank &bank, std::span<const double> x,
                   std::span<double> y);
void tridiag_solve(const TridiagonalBank &bank, std::span<const double> rhs,
                   std::span<double> x);
// out = sign(u) |u|^exponent
void signed_power(std::span<const double> u, double exponent, std::span<double> out);
// sum_j row_weight[j] * sum_k a(j, k) b(j, k)
double weighted_dot(std::span<const double> a, std::span<const double> b, std::size_t cols,
                    std::span<const double> row_weight);
// sum_j row_weight[j] * sum_k |a(j, k)|^p
double weighted_abs_pow(std::span<const double> a, double p, std::size_t cols,
                        std::span<const double> row_weight);

}  // namespace serial

namespace omp
{

void row_transform(std::span<const double> in, std::span<double> out, std::size_t rows,
                   std::span<const double> matrix, std::size_t n_in, std::size_t n_out);
void tridiag_apply(const TridiagonalBank &bank, std::span<const double> x,
                   std::span<double> y);
void tridiag_solve(const TridiagonalBank &bank, std::span<const double> rhs,
                   std::span<double> x);
void signed_power(std::span<const double> u, double exponent, std::span<double> out);
double weighted_dot(std::span<const double> a, std::span<const double> b, std::size_t cols,
                    std::span<const double> row_weight);
double weighted_abs_pow(std::span<const double> a, double p, std::size_t cols,
                        std::span<const double> row_weight);

}  // namespace omp

// Dispatch to the active backend.
void row_transform(std::span<const double> in, std::span<double> out, std::size_t rows,
                   std::span<const double> matrix, std::size_t n_in, std::size_t n_out);
void tridiag_apply(const TridiagonalBank &bank, std::span<const double> x,
                   std::span<double> y);
void tridiag_solve(const TridiagonalBank &bank, std::span<const double> rhs,
                   std::span<double> x);
void signed_power(std::span<const double> u, double exponent, std::span<double> out);
double weighted_dot(std::span<const double> a, std::span<const double> b, std::size_t cols,
                    std::span<const double> row_weight);
double weighted_abs_pow(std::span<const double> a, double p, std::size_t cols,
                        std::span<const double> row_weight);

}  // namespace spiralnls::kernels
