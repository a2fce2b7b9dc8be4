#pragma once

#include <cstdint>
#include <string>

#include "fracmax/field.hpp"

namespace fracmax::maxwell {

struct FracParams {
  double s = 0.5;      // [1/2, 1); s = 1 only through the classical path
  double k = 1.0;      // wavenumber
  double delta = 1.0;  // weight exponent of H^s_delta

  /// Throws std::invalid_argument unless 1/2 <= s < 1 (or s == 1 when
  /// allow_classical), k > 0 and delta > 0.
  void validate(bool allow_classical = false) const;
  /// kappa = k^{1/s}, the vacuum wavenumber of the fractional operator.
  double kappa() const;
};

/// eps_r = 1 + a exp(-|x - x0|^2 / w^2) chi(|x - x0| / R); chi = 1 on [0, 1/2],
/// 0 on [1, inf). The ball of radius R is the obstacle.
struct PermittivityModel {
  double amplitude = 0.0;
  Vec3 center{};
  double width = 1.0;
  double radius = 5.0;

  void validate(const Grid3& g) const;
  static PermittivityModel vacuum(const Grid3& g);
};

struct Permittivity {
  ScalarField eps;
  VectorField3 grad_log_eps;
  double eps_min = 1.0;
  double eps_max = 1.0;
};

Permittivity eval_permittivity(const PermittivityModel& m, const Grid3& g);

struct IncidentSpec {
  Vec3 p{0, 0, 1};
  Vec3 d{1, 0, 0};
};

/// Result of fitting the box so that kappa d lies on the frequency lattice.
struct Snapping {
  double length = 0.0;  // box edge actually used
  double kappa = 0.0;
  int lattice_index = 0;  // kappa = lattice_index * 2 pi / length when snapped
  bool snapped = false;
  std::string warning;  // non-empty when kappa d stays off the lattice
};

/// If d is a coordinate direction, rescale L to the nearest edge with
/// kappa in (2 pi / L) Z; otherwise keep L and report the leakage.
Snapping snap_to_lattice(const FracParams& fp, const IncidentSpec& inc, int n, double length);

/// Projected incident field kappa^{s+1} (p - (p.d) d) e^{i kappa d.x}, sampled
/// pointwise (exact on the grid whether or not kappa d is a lattice vector).
/// `degenerate` is set when p is parallel to d.
VectorField3 incident_one_point(const IncidentSpec& inc, const FracParams& fp, const Grid3& g,
                                bool* degenerate = nullptr);

/// P u = -(-Delta)^{s-1} grad(grad log eps . u).
VectorField3 p_op(const VectorField3& u, const Permittivity& eps, const FracParams& fp);

/// (-Delta)^s u + P u - k^2 eps u.
VectorField3 apply_A(const VectorField3& u, const Permittivity& eps, const FracParams& fp);

/// k^2 (eps - 1) E_i - P E_i.
VectorField3 rhs_F(const VectorField3& e_inc, const Permittivity& eps, const FracParams& fp);

struct CurlCurlResidual {
  double curlcurl_form = 0.0;   // ||I_{2-2s} curl curl u - k^2 eps u - k^2 (eps - 1) E_i||
  double reduced_form = 0.0;    // ||apply_A(u) - F||
  double divergence = 0.0;      // ||div(eps u + (eps - 1) E_i)||
};

CurlCurlResidual curlcurl_residual(const VectorField3& u, const VectorField3& e_inc, const Permittivity& eps,
                                   const FracParams& fp);

/// (ik)^{-1} I_{1-s} curl e (at s = 1 the plain curl).
VectorField3 recover_H(const VectorField3& e, const FracParams& fp);

/// Closed form of recover_H for the projected incident plane wave,
/// (kappa^s / k) d x E_i; valid off the lattice too.
VectorField3 incident_H(const IncidentSpec& inc, const FracParams& fp, const Grid3& g);

/// B(u, v) with the weighted pairing <a, b>_delta = sum w a conj(b) h^3.
Complex bilinear_B(const VectorField3& u, const VectorField3& v, const Permittivity& eps, const FracParams& fp);

struct CoercivityReport {
  double l = 0.0;            // 1 + C_eps + k^2 ||eps||_inf with C_eps = 1
  double worst_ratio = 0.0;  // min over samples of (Re B(u,u) + l ||u||^2_{L2_delta}) / ||u||^2_{H^s_delta}
  double bound_constant = 0.0;  // max |B(u,v)| / (||u||_{H^s_delta} ||v||_{H^s_delta})
  double max_imag_real_fields = 0.0;  // max |Im B(u,u)| / |B(u,u)| over real samples
  int samples = 0;
};

/// Samples random real band-limited fields (|signed index| <= band).
CoercivityReport coercivity_sample(const Permittivity& eps, const FracParams& fp, int samples, int band,
                                   std::uint64_t seed);

}  // namespace fracmax::maxwell
