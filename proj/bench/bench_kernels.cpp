// SPDX-License-Identifier: Apache-2.0
//
// Serial reference kernels against their OpenMP counterparts on solver-sized
// data. Each benchmark takes the radial size as its argument; the angular size
// is fixed at 64, the production resolution.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "spiralnls/energy.hpp"
#include "spiralnls/kernels.hpp"

using namespace spiralnls;
namespace k = spiralnls::kernels;

namespace
{

constexpr int kNtheta = 64;

std::vector<double> random_values(std::size_t n, unsigned seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  std::vector<double> v(n);
  for (double &x : v)
  {
    x = n01(rng);
  }
  return v;
}

GridPtr grid_for(const benchmark::State &state)
{
  return build_grid(30.0, static_cast<int>(state.range(0)), kNtheta, Sector::full_disk());
}

template <bool Omp>
void BM_RowTransform(benchmark::State &state)
{
  const GridPtr g = grid_for(state);
  const auto in = random_values(g->size(), 1);
  std::vector<double> out(g->size());
  for (auto _ : state)
  {
    if constexpr (Omp)
    {
      k::omp::row_transform(in, out, g->nr(), g->forward_matrix(), kNtheta, kNtheta);
    }
    else
    {
      k::serial::row_transform(in, out, g->nr(), g->forward_matrix(), kNtheta, kNtheta);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * g->size());
}

template <bool Omp>
void BM_TridiagSolve(benchmark::State &state)
{
  const std::size_t n = state.range(0);
  k::TridiagonalBank bank(n, kNtheta);
  for (std::size_t i = 0; i < n * kNtheta; ++i)
  {
    bank.lower[i] = -1.0;
    bank.upper[i] = -1.0;
    bank.diag[i] = 2.5 + 0.01 * static_cast<double>(i % kNtheta);
  }
  bank.factorize();
  const auto rhs = random_values(n * kNtheta, 2);
  std::vector<double> x(rhs.size());
  for (auto _ : state)
  {
    if constexpr (Omp)
    {
      k::omp::tridiag_solve(bank, rhs, x);
    }
    else
    {
      k::serial::tridiag_solve(bank, rhs, x);
    }
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(state.iterations() * rhs.size());
}

template <bool Omp>
void BM_SignedPower(benchmark::State &state)
{
  const std::size_t n = state.range(0) * kNtheta;
  const auto u = random_values(n, 3);
  std::vector<double> out(n);
  for (auto _ : state)
  {
    if constexpr (Omp)
    {
      k::omp::signed_power(u, 2.5, out);
    }
    else
    {
      k::serial::signed_power(u, 2.5, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

template <bool Omp>
void BM_WeightedDot(benchmark::State &state)
{
  const std::size_t rows = state.range(0);
  const auto a = random_values(rows * kNtheta, 4);
  const auto b = random_values(rows * kNtheta, 5);
  const auto w = random_values(rows, 6);
  for (auto _ : state)
  {
    double s = Omp ? k::omp::weighted_dot(a, b, kNtheta, w) : k::serial::weighted_dot(a, b, kNtheta, w);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * a.size());
}

// One Sobolev gradient: forward transform, per-mode solve, inverse transform
// and the nonlinearity, all through the dispatching layer.
template <bool Omp>
void BM_Gradient(benchmark::State &state)
{
  k::set_backend(Omp ? k::Backend::kOpenMP : k::Backend::kSerial);
  const GridPtr g = grid_for(state);
  const EnergyModel model(g, {4.0, 1.0, 1.0});
  const Field u = Field::from_function(
      g, [](double r, double th) { return 2.2 * std::exp(-r * r / 4) * (1 + 0.1 * std::cos(th)); });
  for (auto _ : state)
  {
    Field grad = model.gradient(u);
    benchmark::DoNotOptimize(grad.values().data());
  }
  state.SetItemsProcessed(state.iterations() * g->size());
  k::set_backend(k::Backend::kSerial);
}

}  // namespace

#define SPIRALNLS_PAIR(fn)                                                       \
  BENCHMARK_TEMPLATE(fn, false)->Name(#fn "/serial")->RangeMultiplier(4)->Range(128, 2048); \
  BENCHMARK_TEMPLATE(fn, true)->Name(#fn "/omp")->RangeMultiplier(4)->Range(128, 2048)

SPIRALNLS_PAIR(BM_RowTransform);
SPIRALNLS_PAIR(BM_TridiagSolve);
SPIRALNLS_PAIR(BM_SignedPower);
SPIRALNLS_PAIR(BM_WeightedDot);
SPIRALNLS_PAIR(BM_Gradient);

BENCHMARK_MAIN();
