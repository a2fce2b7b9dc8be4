#pragma once

#include <vector>

#include "fracmax/field.hpp"

namespace fracmax {

struct WeightedNormParams {
  double delta = 0.0;
  double s = 0.5;
};

struct WeightedNorms {
  double l2_delta = 0.0;
  double hs_delta = 0.0;
};

/// Samples of <x>^{2 delta} = (1 + |x - x_c|^2)^delta with x_c the box center.
std::vector<double> weight_samples(const Grid3& g, double delta);

WeightedNorms weighted_norms(const ScalarField& u, const WeightedNormParams& p);
WeightedNorms weighted_norms(const VectorField3& u, const WeightedNormParams& p);

/// <a, b>_{L^2_delta} = sum w * a * conj(b) * h^3 (linear in the first slot).
Complex weighted_inner(const VectorField3& a, const VectorField3& b, double delta);

}  // namespace fracmax
