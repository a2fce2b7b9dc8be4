#pragma once

#include <vector>

#include "fracmax/field.hpp"

namespace fracmax::fft {

// Forward transforms are unnormalized; inverse transforms carry 1/N so that
// inverse(forward(u)) == u. Plans are cached per shape and shared between
// threads; execution never mutates a plan.

/// In-place multidimensional DFT over row-major dims (last index fastest).
void forward_inplace(std::vector<Complex>& data, const std::vector<int>& dims);
void inverse_inplace(std::vector<Complex>& data, const std::vector<int>& dims);

std::vector<Complex> forward(const ScalarField& u);
ScalarField inverse(const Grid3& grid, std::vector<Complex> spectrum);

}  // namespace fracmax::fft
