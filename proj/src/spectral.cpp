#include "fracmax/spectral.hpp"

#include <stdexcept>

#include "fracmax/fft.hpp"

namespace fracmax {
namespace {

const Complex kI(0.0, 1.0);

std::array<std::vector<Complex>, 3> forward3(const VectorField3& v) {
  return {fft::forward(v[0]), fft::forward(v[1]), fft::forward(v[2])};
}

VectorField3 inverse3(const Grid3& g, std::array<std::vector<Complex>, 3> s) {
  return VectorField3(fft::inverse(g, std::move(s[0])), fft::inverse(g, std::move(s[1])),
                      fft::inverse(g, std::move(s[2])));
}

bool is_null_mode(const Wavevector& w) { return w.xi_d[0] == 0.0 && w.xi_d[1] == 0.0 && w.xi_d[2] == 0.0; }

ScalarMultiplier power_multiplier(double t) {
  // |0|^{2t} = 0 for t > 0; for t < 0 the zero mode is annihilated.
  ZeroModePolicy zm = t > 0 ? ZeroModePolicy::value(0.0) : ZeroModePolicy::annihilate();
  return {[t](const Wavevector& w) { return Complex(std::pow(w.magnitude, 2.0 * t)); }, zm};
}

}  // namespace

Wavevector wavevector(const Grid3& g, std::size_t idx) {
  Wavevector w;
  w.xi = g.frequency(idx);
  w.xi_d = g.derivative_frequency(idx);
  w.magnitude = norm(w.xi);
  w.is_zero = idx == 0;
  return w;
}

ScalarField apply(const ScalarMultiplier& m, const ScalarField& u) {
  auto spec = fft::forward(u);
  const Grid3& g = u.grid();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const Wavevector w = wavevector(g, i);
    if (w.is_zero) {
      spec[i] = m.zero_mode.kind == ZeroModePolicy::Kind::annihilate ? Complex(0.0) : m.zero_mode.c * spec[i];
    } else {
      spec[i] *= m.symbol(w);
    }
  }
  return fft::inverse(g, std::move(spec));
}

VectorField3 apply(const ScalarMultiplier& m, const VectorField3& u) {
  return VectorField3(apply(m, u[0]), apply(m, u[1]), apply(m, u[2]));
}

VectorField3 apply(const MatrixMultiplier& m, const VectorField3& u) {
  auto s = forward3(u);
  const Grid3& g = u.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Wavevector w = wavevector(g, i);
    const CVec3 in{s[0][i], s[1][i], s[2][i]};
    if (w.is_zero) {
      const Complex c = m.zero_mode.kind == ZeroModePolicy::Kind::annihilate ? Complex(0.0) : m.zero_mode.c;
      for (int a = 0; a < 3; ++a) s[a][i] = c * in[a];
      continue;
    }
    const Matrix3 sym = m.symbol(w);
    for (int a = 0; a < 3; ++a) s[a][i] = sym[a][0] * in[0] + sym[a][1] * in[1] + sym[a][2] * in[2];
  }
  return inverse3(g, std::move(s));
}

ScalarField frac_laplacian(const ScalarField& u, double t) {
  require_finite(u, "frac_laplacian");
  if (t == 0.0) return u;
  return apply(power_multiplier(t), u);
}

VectorField3 frac_laplacian(const VectorField3& u, double t) {
  require_finite(u, "frac_laplacian");
  if (t == 0.0) return u;
  return apply(power_multiplier(t), u);
}

ScalarField riesz_potential(const ScalarField& u, double alpha) {
  if (!(alpha > 0.0 && alpha < 3.0)) throw std::invalid_argument("riesz_potential: order must lie in (0, 3)");
  return frac_laplacian(u, -alpha / 2.0);
}

VectorField3 riesz_potential(const VectorField3& u, double alpha) {
  if (!(alpha > 0.0 && alpha < 3.0)) throw std::invalid_argument("riesz_potential: order must lie in (0, 3)");
  return frac_laplacian(u, -alpha / 2.0);
}

VectorField3 grad(const ScalarField& u) {
  const auto spec = fft::forward(u);
  const Grid3& g = u.grid();
  std::array<std::vector<Complex>, 3> out{spec, spec, spec};
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const Vec3 xi = g.derivative_frequency(i);
    for (int a = 0; a < 3; ++a) out[a][i] *= kI * xi[a];
  }
  return inverse3(g, std::move(out));
}

ScalarField div(const VectorField3& v) {
  const auto s = forward3(v);
  const Grid3& g = v.grid();
  std::vector<Complex> out(g.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Vec3 xi = g.derivative_frequency(i);
    out[i] = kI * (xi[0] * s[0][i] + xi[1] * s[1][i] + xi[2] * s[2][i]);
  }
  return fft::inverse(g, std::move(out));
}

VectorField3 curl(const VectorField3& v) {
  auto s = forward3(v);
  const Grid3& g = v.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 xi = g.derivative_frequency(i);
    const CVec3 c = cross(xi, CVec3{s[0][i], s[1][i], s[2][i]});
    for (int a = 0; a < 3; ++a) s[a][i] = kI * c[a];
  }
  return inverse3(g, std::move(s));
}

VectorField3 curl_curl(const VectorField3& v) {
  auto s = forward3(v);
  const Grid3& g = v.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 xi = g.frequency(i);
    const Vec3 xd = g.derivative_frequency(i);
    const CVec3 in{s[0][i], s[1][i], s[2][i]};
    const double k2 = dot(xi, xi);
    const Complex proj = dot(xd, in);
    for (int a = 0; a < 3; ++a) s[a][i] = k2 * in[a] - xd[a] * proj;
  }
  return inverse3(g, std::move(s));
}

ScalarField laplacian(const ScalarField& u) {
  return apply(ScalarMultiplier{[](const Wavevector& w) { return Complex(-w.magnitude * w.magnitude); },
                                ZeroModePolicy::value(0.0)},
               u);
}

VectorField3 laplacian(const VectorField3& v) {
  return VectorField3(laplacian(v[0]), laplacian(v[1]), laplacian(v[2]));
}

ScalarField null_mode_part(const ScalarField& u) {
  auto spec = fft::forward(u);
  const Grid3& g = u.grid();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (!is_null_mode(wavevector(g, i))) spec[i] = 0.0;
  }
  return fft::inverse(g, std::move(spec));
}

VectorField3 null_mode_part(const VectorField3& v) {
  return VectorField3(null_mode_part(v[0]), null_mode_part(v[1]), null_mode_part(v[2]));
}

}  // namespace fracmax
