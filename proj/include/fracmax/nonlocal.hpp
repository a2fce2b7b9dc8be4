#pragma once

#include <functional>
#include <memory>

#include "fracmax/field.hpp"
#include "fracmax/interpolation.hpp"

namespace fracmax::nonlocal {

/// Normalization constants for dimension n = 3 and fractional order s.
struct ConstantsLedger {
  double s = 0.0;
  double C_ns = 0.0;       // 2^s Gamma((3+s)/2) / (pi^{3/2} |Gamma(-s/2)|)
  double C_singular = 0.0; // 4^s Gamma(3/2+s) / (pi^{3/2} |Gamma(-s)|), the constant for which
                           // C * p.v. int (u(x)-u(y))/|x-y|^{3+2s} dy = (-Delta)^s u
  double c_riesz = 0.0;    // gamma(1-s): int f(y)/|x-y|^{2+s} dy = c_riesz * I_{1-s} f(x)
  double c_pi = 0.0;       // (n+s-1) sqrt(2) / (C_ns^{1/2} c_riesz)
  double k_ns = 0.0;       // filled by fourier_cstar_check, 0 until fitted

  static ConstantsLedger for_order(double s);
  /// C_ns / C_singular: the factor relating D(D* w) to (-Delta)^s w.
  double normalization_ratio() const { return C_ns / C_singular; }
};

/// gamma(alpha) = pi^{3/2} 2^alpha Gamma(alpha/2) / Gamma((3-alpha)/2).
double riesz_gamma(double alpha);

/// alpha(x, y) = (C_ns^{1/2}/sqrt 2) (y - x) / |y - x|^{3/2 + s + 1}.
Vec3 alpha_kernel(const Vec3& x, const Vec3& y, double s);

using TwoPointVector = std::function<CVec3(const Vec3& x, const Vec3& y)>;
using TwoPointScalar = std::function<Complex(const Vec3& x, const Vec3& y)>;

/// Refinement factor of the interpolants built by the adjoint constructors;
/// quadrature lattices at this resolution are served from precomputed samples.
inline constexpr int kOracleRefine = 4;

/// D* w (x, y) = -(w(y) - w(x)) alpha(x, y).
TwoPointVector d_star(const ScalarField& w, double s);
/// C* w (x, y) = alpha(x, y) x (w(y) - w(x)).
TwoPointVector c_star(const VectorField3& w, double s);
/// G* v (x, y) = -(v(y) - v(x)) . alpha(x, y).
TwoPointScalar g_star(const VectorField3& v, double s);

TwoPointVector d_star(std::shared_ptr<const TrigInterpolant> w, double s);
TwoPointVector c_star(std::shared_ptr<const TrigInterpolant> w, double s);

struct QuadratureOptions {
  int radial = 10;        // near-ball radial nodes per segment (Gauss-Jacobi inner, Gauss-Legendre outer)
  int polar = 10;         // Gauss-Legendre nodes in cos(theta)
  int azimuthal = 20;     // equispaced, even
  int face = 10;          // Gauss-Legendre nodes per face direction, exterior
  int exterior_radial = 10;
  double ball_cells = 3.0;  // near-ball radius in grid spacings
  int lattice_refine = kOracleRefine;
};

template <class T>
struct QuadratureResult {
  T value{};
  double refinement_ratio = 0.0;  // |I2 - I1| / |I1 - I0| over three near-field levels
  bool flagged = false;           // ratio > 0.5 with differences above 1e-8 relative
};

/// (Pi v)(x) = c_pi * int v(x, y) / |x - y|^{3/2} dy.
QuadratureResult<CVec3> pi_quadrature(const TwoPointVector& v, const Grid3& g, const Vec3& x, double s,
                                      const QuadratureOptions& opt = {});
/// D(v)(x) = int (v(x,y) + v(y,x)) . alpha(x,y) dy.
QuadratureResult<Complex> nonlocal_div(const TwoPointVector& v, const Grid3& g, const Vec3& x, double s,
                                       const QuadratureOptions& opt = {});
/// C(v)(x) = int alpha(x,y) x (v(x,y) + v(y,x)) dy.
QuadratureResult<CVec3> nonlocal_curl(const TwoPointVector& v, const Grid3& g, const Vec3& x, double s,
                                      const QuadratureOptions& opt = {});

/// Generic driver: integral over R^3 of f(z) where f may be singular at z = 0
/// with radial density ~ r^{p} (after odd terms cancel). x is the lattice
/// point the integral is centered on.
QuadratureResult<CVec3> integrate_r3(const std::function<CVec3(const Vec3& z)>& f, const Grid3& g,
                                     double singular_power, const QuadratureOptions& opt);

struct FourierCurlFit {
  double exponent = 0.0;
  Complex k_complex = 0.0;  // least-squares coefficient of the predicted field
  double k_ns = 0.0;        // real constant: Im k_complex (the transform of C* is i times a real symbol)
  double residual = 0.0;    // ||F - k Y|| / ||F||
};

struct FourierCurlReport {
  FourierCurlFit stated;       // exponent n/2 + s - 1
  FourierCurlFit dimensional;  // exponent n/2 + 1 - s (homogeneity of the kernel transform)
  std::size_t pairs = 0;
  // Residual of the exact discrete identity F = -(K^(xi) + K^(eta)) x u^(xi+eta)
  // with K^ the DFT of the lattice kernel; isolates the 6-D pipeline from the
  // lattice-versus-continuum discrepancy in the fits above.
  double lattice_identity_residual = 0.0;
};

/// Evaluates C* u on the product lattice (diagonal excluded, minimum-image
/// displacements), takes the 6-D DFT and fits k in
/// k (xi/|xi|^e + eta/|eta|^e) x u^(xi + eta) over all xi, eta, xi + eta != 0.
FourierCurlReport fourier_cstar_check(const VectorField3& u, double s);

}  // namespace fracmax::nonlocal
