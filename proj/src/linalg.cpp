// SPDX-License-Identifier: Apache-2.0

#include "spiralnls/linalg.hpp"

#include <cmath>

#include "spiralnls/errors.hpp"

namespace spiralnls::linalg
{

GmresResult gmres(const LinearMap &apply, std::span<const double> rhs, std::span<double> x,
                  const InnerProduct &dot, double rel_tol, int restart, int max_iters)
{
  require(rhs.size() == x.size(), "gmres: size mismatch");
  require(restart > 0 && max_iters > 0, "gmres: restart and max_iters must be positive");
  const std::size_t n = rhs.size();
  GmresResult result;
  const double rhs_norm = std::sqrt(dot(rhs, rhs));
  if (rhs_norm == 0.0)
  {
    std::fill(x.begin(), x.end(), 0.0);
    result.converged = true;
    return result;
  }

  std::vector<std::vector<double>> basis(restart + 1, std::vector<double>(n));
  std::vector<double> hess((restart + 1) * restart);
  std::vector<double> cs(restart), sn(restart), g(restart + 1), y(restart);
  std::vector<double> work(n);
  const auto h = [&](int i, int j) -> double & { return hess[i * restart + j]; };

  while (result.iterations < max_iters)
  {
    apply(x, work);
    for (std::size_t i = 0; i < n; ++i)
    {
      basis[0][i] = rhs[i] - work[i];
    }
    double beta = std::sqrt(dot(basis[0], basis[0]));
    result.relative_residual = beta / rhs_norm;
    if (result.relative_residual <= rel_tol)
    {
      result.converged = true;
      return result;
    }
    for (double &v : basis[0])
    {
      v /= beta;
    }
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;

    int k = 0;
    for (; k < restart && result.iterations < max_iters; ++k)
    {
      ++result.iterations;
      apply(basis[k], basis[k + 1]);
      // Modified Gram-Schmidt, applied twice for stability.
      for (int pass = 0; pass < 2; ++pass)
      {
        for (int i = 0; i <= k; ++i)
        {
          const double c = dot(basis[k + 1], basis[i]);
          if (pass == 0)
          {
            h(i, k) = c;
          }
          else
          {
            h(i, k) += c;
          }
          for (std::size_t t = 0; t < n; ++t)
          {
            basis[k + 1][t] -= c * basis[i][t];
          }
        }
      }
      const double norm = std::sqrt(dot(basis[k + 1], basis[k + 1]));
      h(k + 1, k) = norm;
      if (norm > 0.0)
      {
        for (double &v : basis[k + 1])
        {
          v /= norm;
        }
      }
      for (int i = 0; i < k; ++i)
      {
        const double t = cs[i] * h(i, k) + sn[i] * h(i + 1, k);
        h(i + 1, k) = -sn[i] * h(i, k) + cs[i] * h(i + 1, k);
        h(i, k) = t;
      }
      const double r = std::hypot(h(k, k), h(k + 1, k));
      cs[k] = r > 0.0 ? h(k, k) / r : 1.0;
      sn[k] = r > 0.0 ? h(k + 1, k) / r : 0.0;
      h(k, k) = r;
      h(k + 1, k) = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      result.relative_residual = std::abs(g[k + 1]) / rhs_norm;
      if (result.relative_residual <= rel_tol || norm == 0.0)
      {
        ++k;
        break;
      }
    }
    for (int i = k - 1; i >= 0; --i)
    {
      double s = g[i];
      for (int j = i + 1; j < k; ++j)
      {
        s -= h(i, j) * y[j];
      }
      if (h(i, i) == 0.0)
      {
        fail(ErrorCode::kLinearSolveFailure, "gmres: singular Hessenberg matrix");
      }
      y[i] = s / h(i, i);
    }
    for (int i = 0; i < k; ++i)
    {
      for (std::size_t t = 0; t < n; ++t)
      {
        x[t] += y[i] * basis[i][t];
      }
    }
    if (result.relative_residual <= rel_tol)
    {
      // Confirm with the true residual.
      apply(x, work);
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i)
      {
        work[i] = rhs[i] - work[i];
      }
      s = std::sqrt(dot(work, work));
      result.relative_residual = s / rhs_norm;
      result.converged = result.relative_residual <= 10.0 * rel_tol;
      return result;
    }
  }
  return result;
}

}  // namespace spiralnls::linalg
