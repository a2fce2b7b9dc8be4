#pragma once

#include <functional>

#include "fracmax/field.hpp"

namespace fracmax {

/// A lattice wavevector as seen by a symbol. `xi` is the full frequency,
/// `xi_d` the derivative frequency (Nyquist components zeroed), `magnitude`
/// is |xi|.
struct Wavevector {
  Vec3 xi;
  Vec3 xi_d;
  double magnitude;
  bool is_zero;
};

struct ZeroModePolicy {
  enum class Kind { value, annihilate };
  Kind kind = Kind::annihilate;
  Complex c = 0.0;

  static ZeroModePolicy annihilate() { return {Kind::annihilate, 0.0}; }
  static ZeroModePolicy value(Complex c) { return {Kind::value, c}; }
};

using Matrix3 = std::array<std::array<Complex, 3>, 3>;

struct ScalarMultiplier {
  std::function<Complex(const Wavevector&)> symbol;
  ZeroModePolicy zero_mode;
};

struct MatrixMultiplier {
  std::function<Matrix3(const Wavevector&)> symbol;
  ZeroModePolicy zero_mode;  // value(c) means c * identity on the zero mode
};

Wavevector wavevector(const Grid3& g, std::size_t idx);

ScalarField apply(const ScalarMultiplier& m, const ScalarField& u);
VectorField3 apply(const ScalarMultiplier& m, const VectorField3& u);
VectorField3 apply(const MatrixMultiplier& m, const VectorField3& u);

/// Spectral (-Delta)^t: symbol |xi|^{2t}. t == 0 returns the input unchanged.
ScalarField frac_laplacian(const ScalarField& u, double t);
VectorField3 frac_laplacian(const VectorField3& u, double t);
/// Riesz potential I_alpha = (-Delta)^{-alpha/2}, 0 < alpha < 3, zero mode annihilated.
ScalarField riesz_potential(const ScalarField& u, double alpha);
VectorField3 riesz_potential(const VectorField3& u, double alpha);

VectorField3 grad(const ScalarField& u);
ScalarField div(const VectorField3& v);
VectorField3 curl(const VectorField3& v);
/// Symbol |xi|^2 I - xi_d xi_d^T, i.e. grad div - Delta.
VectorField3 curl_curl(const VectorField3& v);
ScalarField laplacian(const ScalarField& u);
VectorField3 laplacian(const VectorField3& v);

/// Projection onto lattice modes with xi_d = 0 (the zero mode and the modes
/// made only of zero and Nyquist components). Gradients, curls and
/// divergences vanish on exactly this subspace.
ScalarField null_mode_part(const ScalarField& u);
VectorField3 null_mode_part(const VectorField3& v);

}  // namespace fracmax
