#pragma once

#include <vector>

namespace fracmax::detail {

struct GaussRule {
  std::vector<double> nodes;  // ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
const GaussRule& gauss_legendre(int n);

/// n-point Gauss-Jacobi rule on [0, 1] for the weight x^beta, beta > -1.
const GaussRule& gauss_jacobi_unit(int n, double beta);

}  // namespace fracmax::detail
