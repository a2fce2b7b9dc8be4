#pragma once

#include <string>
#include <vector>

#include "fracmax/grid.hpp"

namespace fracmax {

class ScalarField {
 public:
  explicit ScalarField(const Grid3& grid);
  ScalarField(const Grid3& grid, std::vector<Complex> values);

  const Grid3& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  Complex& operator[](std::size_t i) { return values_[i]; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  std::vector<Complex>& values() { return values_; }
  const std::vector<Complex>& values() const { return values_; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(Complex c);

 private:
  Grid3 grid_;
  std::vector<Complex> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(Complex c, ScalarField a);
/// Pointwise product.
ScalarField hadamard(const ScalarField& a, const ScalarField& b);

class VectorField3 {
 public:
  explicit VectorField3(const Grid3& grid);
  VectorField3(ScalarField x, ScalarField y, ScalarField z);

  const Grid3& grid() const { return comps_[0].grid(); }
  ScalarField& operator[](int a) { return comps_[a]; }
  const ScalarField& operator[](int a) const { return comps_[a]; }

  CVec3 at(std::size_t i) const { return {comps_[0][i], comps_[1][i], comps_[2][i]}; }
  void set(std::size_t i, const CVec3& v);

  VectorField3& operator+=(const VectorField3& o);
  VectorField3& operator-=(const VectorField3& o);
  VectorField3& operator*=(Complex c);

 private:
  std::array<ScalarField, 3> comps_;
};

VectorField3 operator+(VectorField3 a, const VectorField3& b);
VectorField3 operator-(VectorField3 a, const VectorField3& b);
VectorField3 operator*(Complex c, VectorField3 a);
/// Scalar field times vector field, pointwise.
VectorField3 hadamard(const ScalarField& a, const VectorField3& v);
/// Pointwise bilinear dot product of a vector field with another.
ScalarField pointwise_dot(const VectorField3& a, const VectorField3& b);

/// Unweighted grid inner product sum(conj(a) * b) * h^3.
Complex inner(const ScalarField& a, const ScalarField& b);
Complex inner(const VectorField3& a, const VectorField3& b);
/// Grid L2 norm, sqrt(sum |u|^2 * h^3).
double l2_norm(const ScalarField& u);
double l2_norm(const VectorField3& u);
double max_abs(const ScalarField& u);
double max_abs(const VectorField3& u);

void require_same_grid(const Grid3& a, const Grid3& b, const char* where);
/// Throws std::domain_error naming the first non-finite sample.
void require_finite(const ScalarField& u, const std::string& where);
void require_finite(const VectorField3& u, const std::string& where);

}  // namespace fracmax
