#pragma once

#include <cstdint>
#include <vector>

#include "fracmax/field.hpp"

namespace fracmax {

/// Trigonometric interpolant of up to three grid fields sharing one grid,
/// viewed as functions on R^3 that vanish outside the closed box [0, L]^3.
/// The Nyquist term of each axis uses a cosine so real data interpolate to
/// real values. Samples on a lattice refined by `refine` are precomputed by
/// zero padding; other points are summed directly.
class TrigInterpolant {
 public:
  TrigInterpolant(const std::vector<ScalarField>& fields, int refine);
  explicit TrigInterpolant(const ScalarField& f, int refine = 1);
  explicit TrigInterpolant(const VectorField3& f, int refine = 1);

  int components() const { return static_cast<int>(coeffs_.size()); }
  const Grid3& grid() const { return grid_; }
  int refine() const { return refine_; }

  /// Values of all components at y (unused trailing entries are zero).
  CVec3 eval(const Vec3& y) const;

 private:
  CVec3 direct_sum(const Vec3& y) const;

  Grid3 grid_;
  int refine_;
  std::uint64_t id_;
  std::vector<std::vector<Complex>> coeffs_;   // spectrum / N
  std::vector<std::vector<Complex>> refined_;  // samples on the refined lattice
};

}  // namespace fracmax
