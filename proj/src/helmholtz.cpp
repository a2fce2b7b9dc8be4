#include "fracmax/helmholtz.hpp"

#include <stdexcept>

#include "fracmax/fft.hpp"
#include "fracmax/spectral.hpp"

namespace fracmax::helmholtz {
namespace {

const Complex kI(0.0, 1.0);
constexpr double kGaugeTol = 1e-9;

void check_order(double s, const char* where) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument(std::string(where) + ": s must lie in (0, 1)");
}

// Measured against the size of the element's derivatives, not ||a||: when
// the curl part is negligible, a is roundoff and its own ratio is noise.
void check_gauge(const FhdElement& e, const char* where) {
  const double d = l2_norm(div(e.a));
  const double scale = l2_norm(grad(e.phi)) + l2_norm(curl(e.a));
  if (d > kGaugeTol * scale) {
    throw std::invalid_argument(std::string(where) + ": gauge violated, ||div a|| / ||a|| = " +
                                std::to_string(gauge_defect(e)));
  }
}

}  // namespace

FhdElement::FhdElement(double s_, ScalarField phi_, VectorField3 a_) : s(s_), phi(std::move(phi_)), a(std::move(a_)) {
  require_same_grid(phi.grid(), a.grid(), "FhdElement");
}

FhdElement FhdElement::zero(const Grid3& g, double s) { return FhdElement(s, ScalarField(g), VectorField3(g)); }

FhdElement operator+(const FhdElement& x, const FhdElement& y) {
  if (x.s != y.s) throw std::invalid_argument("FhdElement: orders differ");
  return FhdElement(x.s, x.phi + y.phi, x.a + y.a);
}

FhdElement operator*(Complex c, const FhdElement& x) { return FhdElement(x.s, c * x.phi, c * x.a); }

VectorField3 pi_dstar(const ScalarField& f, double s) {
  check_order(s, "pi_dstar");
  require_finite(f, "pi_dstar");
  const Grid3& g = f.grid();
  const auto spec = fft::forward(f);
  std::array<std::vector<Complex>, 3> out{spec, spec, spec};
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const Wavevector w = wavevector(g, i);
    const double m = w.is_zero ? 0.0 : std::pow(w.magnitude, s - 1.0);
    for (int a = 0; a < 3; ++a) out[a][i] *= kI * m * w.xi_d[a];
  }
  return VectorField3(fft::inverse(g, std::move(out[0])), fft::inverse(g, std::move(out[1])),
                      fft::inverse(g, std::move(out[2])));
}

VectorField3 pi_cstar(const VectorField3& f, double s) {
  check_order(s, "pi_cstar");
  require_finite(f, "pi_cstar");
  const Grid3& g = f.grid();
  std::array<std::vector<Complex>, 3> sp{fft::forward(f[0]), fft::forward(f[1]), fft::forward(f[2])};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Wavevector w = wavevector(g, i);
    const double m = w.is_zero ? 0.0 : std::pow(w.magnitude, s - 1.0);
    const CVec3 c = cross(w.xi_d, CVec3{sp[0][i], sp[1][i], sp[2][i]});
    for (int a = 0; a < 3; ++a) sp[a][i] = kI * m * c[a];
  }
  return VectorField3(fft::inverse(g, std::move(sp[0])), fft::inverse(g, std::move(sp[1])),
                      fft::inverse(g, std::move(sp[2])));
}

ClassicalParts classical_decompose(const VectorField3& v) {
  require_finite(v, "classical_decompose");
  const Grid3& g = v.grid();
  std::array<std::vector<Complex>, 3> sp{fft::forward(v[0]), fft::forward(v[1]), fft::forward(v[2])};
  std::vector<Complex> phi(g.size());
  std::array<std::vector<Complex>, 3> a{std::vector<Complex>(g.size()), std::vector<Complex>(g.size()),
                                        std::vector<Complex>(g.size())};
  std::array<std::vector<Complex>, 3> rest{std::vector<Complex>(g.size()), std::vector<Complex>(g.size()),
                                           std::vector<Complex>(g.size())};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 xd = g.derivative_frequency(i);
    const double k2 = dot(xd, xd);
    const CVec3 vh{sp[0][i], sp[1][i], sp[2][i]};
    if (k2 == 0.0) {
      for (int c = 0; c < 3; ++c) rest[c][i] = vh[c];
      continue;
    }
    phi[i] = -kI * dot(xd, vh) / k2;
    const CVec3 ah = cross(xd, vh);
    for (int c = 0; c < 3; ++c) a[c][i] = kI * ah[c] / k2;
  }
  return {fft::inverse(g, std::move(phi)),
          VectorField3(fft::inverse(g, std::move(a[0])), fft::inverse(g, std::move(a[1])),
                       fft::inverse(g, std::move(a[2]))),
          VectorField3(fft::inverse(g, std::move(rest[0])), fft::inverse(g, std::move(rest[1])),
                       fft::inverse(g, std::move(rest[2])))};
}

FhdElement pi_inverse(const VectorField3& v_t, double s) {
  check_order(s, "pi_inverse");
  auto parts = classical_decompose(v_t);
  const double t = (1.0 - s) / 2.0;
  return FhdElement(s, frac_laplacian(parts.phi_t, t), frac_laplacian(parts.a_t, t));
}

double gauge_defect(const FhdElement& e) {
  const double an = l2_norm(e.a);
  if (an == 0.0) return 0.0;
  return l2_norm(div(e.a)) / an;
}

VectorField3 pi(const FhdElement& e) {
  check_gauge(e, "pi");
  return pi_dstar(e.phi, e.s) + pi_cstar(e.a, e.s);
}

FhdElement tilde_curl(const FhdElement& e) {
  check_gauge(e, "tilde_curl");
  return FhdElement(e.s, ScalarField(e.phi.grid()), pi_cstar(e.a, e.s));
}

nonlocal::TwoPointVector as_two_point(const FhdElement& e) {
  auto phi = std::make_shared<const TrigInterpolant>(e.phi, nonlocal::kOracleRefine);
  auto a = std::make_shared<const TrigInterpolant>(e.a, nonlocal::kOracleRefine);
  auto d = nonlocal::d_star(phi, e.s);
  auto c = nonlocal::c_star(a, e.s);
  return [d = std::move(d), c = std::move(c)](const Vec3& x, const Vec3& y) {
    using fracmax::operator+;
    return d(x, y) + c(x, y);
  };
}

CVec3 two_point_eval(const FhdElement& e, const Vec3& x, const Vec3& y) {
  if (x == y) throw std::domain_error("two_point_eval: diagonal x = y");
  return as_two_point(e)(x, y);
}

}  // namespace fracmax::helmholtz
