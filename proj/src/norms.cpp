#include "fracmax/norms.hpp"

#include <stdexcept>

#include "fracmax/spectral.hpp"

namespace fracmax {
namespace {

void check_params(const WeightedNormParams& p) {
  if (!(p.delta >= 0.0)) throw std::invalid_argument("weighted_norms: delta must be >= 0");
  if (!(p.s > 0.0 && p.s <= 1.0)) throw std::invalid_argument("weighted_norms: s must lie in (0, 1]");
}

double weighted_sum(const ScalarField& u, const std::vector<double>& w) {
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += w[i] * std::norm(u[i]);
  return acc * u.grid().cell_volume();
}

}  // namespace

std::vector<double> weight_samples(const Grid3& g, double delta) {
  std::vector<double> w(g.size());
  const Vec3 c = g.center();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Vec3 r = g.point(i) - c;
    w[i] = delta == 0.0 ? 1.0 : std::pow(1.0 + dot(r, r), delta);
  }
  return w;
}

WeightedNorms weighted_norms(const ScalarField& u, const WeightedNormParams& p) {
  check_params(p);
  const auto w = weight_samples(u.grid(), p.delta);
  const double l2 = weighted_sum(u, w);
  const double frac = weighted_sum(frac_laplacian(u, p.s / 2.0), w);
  return {std::sqrt(l2), std::sqrt(l2 + frac)};
}

WeightedNorms weighted_norms(const VectorField3& u, const WeightedNormParams& p) {
  check_params(p);
  const auto w = weight_samples(u.grid(), p.delta);
  const VectorField3 d = frac_laplacian(u, p.s / 2.0);
  double l2 = 0.0, frac = 0.0;
  for (int a = 0; a < 3; ++a) {
    l2 += weighted_sum(u[a], w);
    frac += weighted_sum(d[a], w);
  }
  return {std::sqrt(l2), std::sqrt(l2 + frac)};
}

Complex weighted_inner(const VectorField3& a, const VectorField3& b, double delta) {
  require_same_grid(a.grid(), b.grid(), "weighted_inner");
  const auto w = weight_samples(a.grid(), delta);
  Complex acc = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * a[c][i] * std::conj(b[c][i]);
  }
  return acc * a.grid().cell_volume();
}

}  // namespace fracmax
