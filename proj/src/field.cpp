#include "fracmax/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace fracmax {

ScalarField::ScalarField(const Grid3& grid) : grid_(grid), values_(grid.size()) {}

ScalarField::ScalarField(const Grid3& grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("ScalarField: value count " + std::to_string(values_.size()) +
                                " does not match n^3 = " + std::to_string(grid_.size()));
  }
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField +=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_, "ScalarField -=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(Complex c) {
  for (auto& v : values_) v *= c;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(Complex c, ScalarField a) { return a *= c; }

ScalarField hadamard(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "hadamard");
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

VectorField3::VectorField3(const Grid3& grid)
    : comps_{ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}

VectorField3::VectorField3(ScalarField x, ScalarField y, ScalarField z)
    : comps_{std::move(x), std::move(y), std::move(z)} {
  require_same_grid(comps_[0].grid(), comps_[1].grid(), "VectorField3");
  require_same_grid(comps_[0].grid(), comps_[2].grid(), "VectorField3");
}

void VectorField3::set(std::size_t i, const CVec3& v) {
  for (int a = 0; a < 3; ++a) comps_[a][i] = v[a];
}

VectorField3& VectorField3::operator+=(const VectorField3& o) {
  for (int a = 0; a < 3; ++a) comps_[a] += o.comps_[a];
  return *this;
}

VectorField3& VectorField3::operator-=(const VectorField3& o) {
  for (int a = 0; a < 3; ++a) comps_[a] -= o.comps_[a];
  return *this;
}

VectorField3& VectorField3::operator*=(Complex c) {
  for (auto& comp : comps_) comp *= c;
  return *this;
}

VectorField3 operator+(VectorField3 a, const VectorField3& b) { return a += b; }
VectorField3 operator-(VectorField3 a, const VectorField3& b) { return a -= b; }
VectorField3 operator*(Complex c, VectorField3 a) { return a *= c; }

VectorField3 hadamard(const ScalarField& a, const VectorField3& v) {
  return VectorField3(hadamard(a, v[0]), hadamard(a, v[1]), hadamard(a, v[2]));
}

ScalarField pointwise_dot(const VectorField3& a, const VectorField3& b) {
  require_same_grid(a.grid(), b.grid(), "pointwise_dot");
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a[0][i] * b[0][i] + a[1][i] * b[1][i] + a[2][i] * b[2][i];
  }
  return out;
}

Complex inner(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "inner");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc * a.grid().cell_volume();
}

Complex inner(const VectorField3& a, const VectorField3& b) {
  return inner(a[0], b[0]) + inner(a[1], b[1]) + inner(a[2], b[2]);
}

double l2_norm(const ScalarField& u) {
  double acc = 0.0;
  for (const auto& v : u.values()) acc += std::norm(v);
  return std::sqrt(acc * u.grid().cell_volume());
}

double l2_norm(const VectorField3& u) {
  const double a = l2_norm(u[0]), b = l2_norm(u[1]), c = l2_norm(u[2]);
  return std::sqrt(a * a + b * b + c * c);
}

double max_abs(const ScalarField& u) {
  double m = 0.0;
  for (const auto& v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const VectorField3& u) {
  double m = 0.0;
  for (std::size_t i = 0; i < u[0].size(); ++i) m = std::max(m, norm(u.at(i)));
  return m;
}

void require_same_grid(const Grid3& a, const Grid3& b, const char* where) {
  if (a != b) throw std::invalid_argument(std::string(where) + ": fields live on different grids");
}

void require_finite(const ScalarField& u, const std::string& where) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i].real()) || !std::isfinite(u[i].imag())) {
      const auto ijk = u.grid().unravel(i);
      throw std::domain_error(where + ": non-finite value at index " + std::to_string(i) + " (i=" +
                              std::to_string(ijk[0]) + ", j=" + std::to_string(ijk[1]) +
                              ", k=" + std::to_string(ijk[2]) + ")");
    }
  }
}

void require_finite(const VectorField3& u, const std::string& where) {
  for (int a = 0; a < 3; ++a) require_finite(u[a], where + " component " + std::to_string(a));
}

}  // namespace fracmax
