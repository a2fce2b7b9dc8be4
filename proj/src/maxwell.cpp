#include "fracmax/maxwell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fracmax/cutoff.hpp"
#include "fracmax/fft.hpp"
#include "fracmax/helmholtz.hpp"
#include "fracmax/norms.hpp"
#include "fracmax/spectral.hpp"

namespace fracmax::maxwell {
namespace {

const Complex kI(0.0, 1.0);

// Below this the Gaussian factor of the bump counts as zero (the obstacle
// boundary sits where it has decayed past 1e-10).
const double kBumpDecay = std::sqrt(std::log(1e10));

void check_incident(const IncidentSpec& inc) {
  if (std::abs(norm(inc.d) - 1.0) > 1e-12) throw std::invalid_argument("incident: direction d must be a unit vector");
  if (norm(inc.p) == 0.0) throw std::invalid_argument("incident: polarization p must be nonzero");
}

Vec3 transverse(const IncidentSpec& inc) { return inc.p - dot(inc.p, inc.d) * inc.d; }

}  // namespace

void FracParams::validate(bool allow_classical) const {
  const bool fractional = s >= 0.5 && s < 1.0;
  if (!(fractional || (allow_classical && s == 1.0))) {
    throw std::invalid_argument("FracParams: s must lie in [0.5, 1), got " + std::to_string(s));
  }
  if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("FracParams: k must be positive");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("FracParams: delta must be positive");
}

double FracParams::kappa() const { return std::pow(k, 1.0 / s); }

void PermittivityModel::validate(const Grid3& g) const {
  if (!(amplitude > -1.0)) throw std::invalid_argument("permittivity: amplitude must exceed -1 (eps_r > 0)");
  if (amplitude == 0.0) return;
  if (!(width > 0.0)) throw std::invalid_argument("permittivity: width must be positive");
  if (radius < kBumpDecay * width) {
    throw std::invalid_argument("permittivity: radius must be >= " + std::to_string(kBumpDecay) +
                                " widths so the bump decays below 1e-10 at the obstacle boundary");
  }
  for (int a = 0; a < 3; ++a) {
    if (center[a] - radius < -1e-12 || center[a] + radius > g.length() + 1e-12) {
      throw std::invalid_argument("permittivity: obstacle ball must lie inside the box");
    }
  }
}

PermittivityModel PermittivityModel::vacuum(const Grid3& g) {
  PermittivityModel m;
  m.center = g.center();
  return m;
}

Permittivity eval_permittivity(const PermittivityModel& m, const Grid3& g) {
  m.validate(g);
  Permittivity out{ScalarField(g), VectorField3(g), 1.0, 1.0};
  double lo = 1.0, hi = 1.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double eps = 1.0;
    Vec3 grad_eps{};
    if (m.amplitude != 0.0) {
      const Vec3 z = g.point(i) - m.center;
      const double r = norm(z);
      const double t = r / m.radius;
      const double chi = smooth_cutoff(t);
      if (chi > 0.0) {
        const double gauss = std::exp(-dot(z, z) / (m.width * m.width));
        eps = 1.0 + m.amplitude * gauss * chi;
        // grad(gauss chi) = gauss (-2 z / w^2) chi + gauss chi'(t) z / (r R)
        double radial = -2.0 * chi / (m.width * m.width);
        if (r > 0.0) radial += smooth_cutoff_derivative(t) / (r * m.radius);
        grad_eps = (m.amplitude * gauss * radial) * z;
      }
    }
    out.eps[i] = eps;
    for (int a = 0; a < 3; ++a) out.grad_log_eps[a][i] = grad_eps[a] / eps;
    lo = std::min(lo, eps);
    hi = std::max(hi, eps);
  }
  out.eps_min = lo;
  out.eps_max = hi;
  return out;
}

Snapping snap_to_lattice(const FracParams& fp, const IncidentSpec& inc, int n, double length) {
  fp.validate(true);
  check_incident(inc);
  Snapping out;
  out.kappa = fp.kappa();
  out.length = length;
  int zeros = 0;
  for (int a = 0; a < 3; ++a) {
    if (std::abs(inc.d[a]) < 1e-12) ++zeros;
  }
  if (zeros != 2) {
    out.warning = "direction is not a coordinate axis; kappa d is off the lattice and the incident field leaks";
    return out;
  }
  const double fundamental = 2.0 * kPi / length;
  const int m = std::max(1, static_cast<int>(std::lround(out.kappa / fundamental)));
  if (m >= n / 2) {
    throw std::invalid_argument("snap_to_lattice: kappa = " + std::to_string(out.kappa) +
                                " needs lattice index " + std::to_string(m) + " >= n/2; refine the grid");
  }
  out.lattice_index = m;
  out.length = 2.0 * kPi * m / out.kappa;
  out.snapped = true;
  return out;
}

VectorField3 incident_one_point(const IncidentSpec& inc, const FracParams& fp, const Grid3& g, bool* degenerate) {
  fp.validate(true);
  check_incident(inc);
  const Vec3 pt = transverse(inc);
  const bool degen = norm(pt) <= 1e-14 * norm(inc.p);
  if (degenerate) *degenerate = degen;
  VectorField3 out(g);
  if (degen) return out;
  const double kappa = fp.kappa();
  const double amp = std::pow(kappa, fp.s + 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Complex phase = std::polar(amp, kappa * dot(inc.d, g.point(i)));
    out.set(i, CVec3{phase * pt[0], phase * pt[1], phase * pt[2]});
  }
  return out;
}

VectorField3 p_op(const VectorField3& u, const Permittivity& eps, const FracParams& fp) {
  require_same_grid(u.grid(), eps.eps.grid(), "p_op");
  const Grid3& g = u.grid();
  auto q = fft::forward(pointwise_dot(eps.grad_log_eps, u));
  std::array<std::vector<Complex>, 3> out{q, q, q};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Wavevector w = wavevector(g, i);
    const double m = w.is_zero ? 0.0 : std::pow(w.magnitude, 2.0 * fp.s - 2.0);
    for (int a = 0; a < 3; ++a) out[a][i] *= -kI * m * w.xi_d[a];
  }
  return VectorField3(fft::inverse(g, std::move(out[0])), fft::inverse(g, std::move(out[1])),
                      fft::inverse(g, std::move(out[2])));
}

VectorField3 apply_A(const VectorField3& u, const Permittivity& eps, const FracParams& fp) {
  const double k2 = fp.k * fp.k;
  return frac_laplacian(u, fp.s) + p_op(u, eps, fp) - Complex(k2) * hadamard(eps.eps, u);
}

VectorField3 rhs_F(const VectorField3& e_inc, const Permittivity& eps, const FracParams& fp) {
  ScalarField contrast = eps.eps;
  for (auto& v : contrast.values()) v -= 1.0;
  return Complex(fp.k * fp.k) * hadamard(contrast, e_inc) - p_op(e_inc, eps, fp);
}

CurlCurlResidual curlcurl_residual(const VectorField3& u, const VectorField3& e_inc, const Permittivity& eps,
                                   const FracParams& fp) {
  const double k2 = fp.k * fp.k;
  ScalarField contrast = eps.eps;
  for (auto& v : contrast.values()) v -= 1.0;
  const VectorField3 source = hadamard(contrast, e_inc);
  const VectorField3 eps_u = hadamard(eps.eps, u);

  CurlCurlResidual r;
  const VectorField3 cc = frac_laplacian(curl_curl(u), fp.s - 1.0);
  r.curlcurl_form = l2_norm(cc - Complex(k2) * eps_u - Complex(k2) * source);
  r.reduced_form = l2_norm(apply_A(u, eps, fp) - rhs_F(e_inc, eps, fp));
  r.divergence = l2_norm(div(eps_u + source));
  return r;
}

VectorField3 recover_H(const VectorField3& e, const FracParams& fp) {
  if (!(fp.k > 0.0)) throw std::invalid_argument("recover_H: k must be positive");
  const Complex scale = 1.0 / (kI * fp.k);
  if (fp.s == 1.0) return scale * curl(e);
  return scale * helmholtz::pi_cstar(e, fp.s);
}

VectorField3 incident_H(const IncidentSpec& inc, const FracParams& fp, const Grid3& g) {
  const VectorField3 e = incident_one_point(inc, fp, g);
  const double c = std::pow(fp.kappa(), fp.s) / fp.k;
  VectorField3 out(g);
  for (std::size_t i = 0; i < g.size(); ++i) out.set(i, Complex(c) * cross(inc.d, e.at(i)));
  return out;
}

Complex bilinear_B(const VectorField3& u, const VectorField3& v, const Permittivity& eps, const FracParams& fp) {
  if (!(fp.delta > 0.0)) throw std::invalid_argument("bilinear_B: delta must be positive");
  const double d = fp.delta;
  return weighted_inner(frac_laplacian(u, fp.s), v, d) + weighted_inner(p_op(u, eps, fp), v, d) -
         fp.k * fp.k * weighted_inner(hadamard(eps.eps, u), v, d);
}

CoercivityReport coercivity_sample(const Permittivity& eps, const FracParams& fp, int samples, int band,
                                   std::uint64_t seed) {
  fp.validate();
  const Grid3& g = eps.eps.grid();
  if (band < 1 || band >= g.n() / 2) throw std::invalid_argument("coercivity_sample: band must lie in [1, n/2)");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto draw = [&]() {
    VectorField3 u(g);
    for (int c = 0; c < 3; ++c) {
      for (auto& v : u[c].values()) v = normal(rng);
      auto spec = fft::forward(u[c]);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const auto ijk = g.unravel(i);
        for (int a = 0; a < 3; ++a) {
          if (std::abs(g.signed_index(ijk[a])) > band) spec[i] = 0.0;
        }
      }
      u[c] = fft::inverse(g, std::move(spec));
      for (auto& v : u[c].values()) v = v.real();
    }
    return u;
  };

  CoercivityReport rep;
  rep.l = 1.0 + 1.0 + fp.k * fp.k * eps.eps_max;
  rep.worst_ratio = std::numeric_limits<double>::infinity();
  rep.samples = samples;
  const WeightedNormParams wp{fp.delta, fp.s};
  VectorField3 prev = draw();
  for (int t = 0; t < samples; ++t) {
    const VectorField3 u = draw();
    const auto nu = weighted_norms(u, wp);
    const Complex buu = bilinear_B(u, u, eps, fp);
    const double ratio = (buu.real() + rep.l * nu.l2_delta * nu.l2_delta) / (nu.hs_delta * nu.hs_delta);
    rep.worst_ratio = std::min(rep.worst_ratio, ratio);
    rep.max_imag_real_fields = std::max(rep.max_imag_real_fields, std::abs(buu.imag()) / std::abs(buu));
    const auto nv = weighted_norms(prev, wp);
    rep.bound_constant =
        std::max(rep.bound_constant, std::abs(bilinear_B(u, prev, eps, fp)) / (nu.hs_delta * nv.hs_delta));
    prev = u;
  }
  return rep;
}

}  // namespace fracmax::maxwell
