// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace spiralnls::linalg
{

using LinearMap = std::function<void(std::span<const double>, std::span<double>)>;
using InnerProduct = std::function<double(std::span<const double>, std::span<const double>)>;

struct GmresResult
{
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

// Restarted GMRES in an arbitrary inner product; x holds the initial guess on
// entry. The residual is measured in the norm induced by `dot`.
GmresResult gmres(const LinearMap &apply, std::span<const double> rhs, std::span<double> x,
                  const InnerProduct &dot, double rel_tol, int restart, int max_iters);

}  // namespace spiralnls::linalg
