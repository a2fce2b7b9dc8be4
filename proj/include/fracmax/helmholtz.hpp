#pragma once

#include "fracmax/field.hpp"
#include "fracmax/nonlocal.hpp"

namespace fracmax::helmholtz {

/// A decomposable two-point field D* phi + C* a, stored by its potentials.
/// Zero modes of the potentials are 0; div a = 0.
struct FhdElement {
  double s = 0.5;
  ScalarField phi;
  VectorField3 a;

  FhdElement(double s, ScalarField phi, VectorField3 a);
  static FhdElement zero(const Grid3& g, double s);
};

FhdElement operator+(const FhdElement& x, const FhdElement& y);
FhdElement operator*(Complex c, const FhdElement& x);

/// I_{1-s} grad f: symbol |xi|^{s-1} i xi.
VectorField3 pi_dstar(const ScalarField& f, double s);
/// I_{1-s} curl f: symbol |xi|^{s-1} i xi x.
VectorField3 pi_cstar(const VectorField3& f, double s);

struct ClassicalParts {
  ScalarField phi_t;      // grad phi_t is the longitudinal part
  VectorField3 a_t;       // curl a_t is the transverse part, div a_t = 0
  VectorField3 remainder; // null-mode content (zero mode and Nyquist-only modes)
};

/// v = grad phi_t + curl a_t + remainder.
ClassicalParts classical_decompose(const VectorField3& v);

/// Potentials of the unique element with pi(e) = v_t (null-mode content of
/// v_t is dropped; see classical_decompose).
FhdElement pi_inverse(const VectorField3& v_t, double s);

/// pi_dstar(e.phi) + pi_cstar(e.a). Rejects elements violating the gauge.
VectorField3 pi(const FhdElement& e);

/// Two-point curl: potentials (0, I_{1-s} curl a); independent of e.phi.
FhdElement tilde_curl(const FhdElement& e);

/// ||div a|| / ||a|| (0 for a = 0).
double gauge_defect(const FhdElement& e);

/// Pointwise D* phi + C* a from trigonometric interpolants of the potentials.
CVec3 two_point_eval(const FhdElement& e, const Vec3& x, const Vec3& y);
/// Same, as a reusable callable (interpolants built once).
nonlocal::TwoPointVector as_two_point(const FhdElement& e);

}  // namespace fracmax::helmholtz
