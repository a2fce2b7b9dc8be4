#include "fracmax/grid.hpp"

#include <stdexcept>
#include <string>

namespace fracmax {

Grid3::Grid3(int n, double length) : n_(n), length_(length) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("Grid3: n must be even and >= 4, got " + std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("Grid3: box length must be positive and finite");
  }
}

double Grid3::cell_volume() const {
  const double h = spacing();
  return h * h * h;
}

double Grid3::fundamental() const { return 2.0 * kPi / length_; }

std::array<int, 3> Grid3::unravel(std::size_t idx) const {
  const auto n = static_cast<std::size_t>(n_);
  return {static_cast<int>(idx % n), static_cast<int>((idx / n) % n), static_cast<int>(idx / (n * n))};
}

Vec3 Grid3::point(std::size_t idx) const {
  const auto ijk = unravel(idx);
  const double h = spacing();
  return {ijk[0] * h, ijk[1] * h, ijk[2] * h};
}

Vec3 Grid3::frequency(std::size_t idx) const {
  const auto ijk = unravel(idx);
  const double f = fundamental();
  return {f * signed_index(ijk[0]), f * signed_index(ijk[1]), f * signed_index(ijk[2])};
}

Vec3 Grid3::derivative_frequency(std::size_t idx) const {
  const auto ijk = unravel(idx);
  const double f = fundamental();
  Vec3 xi{};
  for (int a = 0; a < 3; ++a) {
    xi[a] = is_nyquist(ijk[a]) ? 0.0 : f * signed_index(ijk[a]);
  }
  return xi;
}

}  // namespace fracmax
