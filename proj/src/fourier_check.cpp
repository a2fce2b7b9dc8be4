#include <stdexcept>

#include "fracmax/fft.hpp"
#include "fracmax/nonlocal.hpp"

namespace fracmax::nonlocal {
namespace {

FourierCurlFit fit(const std::array<std::vector<Complex>, 3>& F, const std::vector<CVec3>& u_hat, const Grid3& g,
                   double exponent) {
  const std::size_t N = g.size();
  const int n = g.n();
  Complex num = 0.0;
  double den = 0.0, f2 = 0.0;
  std::vector<CVec3> Y(N * N);
  for (std::size_t xi = 0; xi < N; ++xi) {
    const Vec3 a = g.frequency(xi);
    const double na = norm(a);
    const auto ia = g.unravel(xi);
    for (std::size_t eta = 0; eta < N; ++eta) {
      const Vec3 b = g.frequency(eta);
      const double nb = norm(b);
      const auto ib = g.unravel(eta);
      const std::size_t sum = g.index((ia[0] + ib[0]) % n, (ia[1] + ib[1]) % n, (ia[2] + ib[2]) % n);
      const std::size_t flat = xi * N + eta;
      if (xi == 0 || eta == 0 || sum == 0) continue;
      const Vec3 w = std::pow(na, -exponent) * a + std::pow(nb, -exponent) * b;
      Y[flat] = cross(w, u_hat[sum]);
      const CVec3 f{F[0][flat], F[1][flat], F[2][flat]};
      for (int c = 0; c < 3; ++c) {
        num += std::conj(Y[flat][c]) * f[c];
        den += std::norm(Y[flat][c]);
        f2 += std::norm(f[c]);
      }
    }
  }
  if (den == 0.0) throw std::domain_error("fourier_cstar_check: degenerate fit, predicted transform vanishes");
  FourierCurlFit out;
  out.exponent = exponent;
  out.k_complex = num / den;
  out.k_ns = out.k_complex.imag();
  double r2 = 0.0;
  for (std::size_t xi = 0; xi < N; ++xi) {
    const auto ia = g.unravel(xi);
    for (std::size_t eta = 0; eta < N; ++eta) {
      const auto ib = g.unravel(eta);
      const std::size_t sum = g.index((ia[0] + ib[0]) % n, (ia[1] + ib[1]) % n, (ia[2] + ib[2]) % n);
      if (xi == 0 || eta == 0 || sum == 0) continue;
      const std::size_t flat = xi * N + eta;
      for (int c = 0; c < 3; ++c) r2 += std::norm(F[c][flat] - out.k_complex * Y[flat][c]);
    }
  }
  out.residual = std::sqrt(r2 / f2);
  return out;
}

}  // namespace

FourierCurlReport fourier_cstar_check(const VectorField3& u, double s) {
  const Grid3& g = u.grid();
  const int n = g.n();
  if (n > 8) throw std::invalid_argument("fourier_cstar_check: n must be <= 8 (the product lattice has n^6 points)");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("fourier_cstar_check: s must lie in (0, 1)");
  require_finite(u, "fourier_cstar_check");
  const std::size_t N = g.size();
  const double h = g.spacing();
  const double pref = std::sqrt(ConstantsLedger::for_order(s).C_ns / 2.0);

  // Kernel on minimum-image displacements; the component along an axis whose
  // displacement sits on the Nyquist plane is zeroed so the lattice kernel
  // stays odd.
  std::vector<Vec3> kern(N);
  for (std::size_t d = 1; d < N; ++d) {
    const auto ijk = g.unravel(d);
    Vec3 z{};
    for (int a = 0; a < 3; ++a) z[a] = g.signed_index(ijk[a]) * h;
    Vec3 k = (pref * std::pow(norm(z), -(2.5 + s))) * z;
    for (int a = 0; a < 3; ++a) {
      if (g.is_nyquist(ijk[a])) k[a] = 0.0;
    }
    kern[d] = k;
  }

  std::array<std::vector<Complex>, 3> F;
  for (auto& c : F) c.assign(N * N, 0.0);
  for (std::size_t xi = 0; xi < N; ++xi) {
    const auto ix = g.unravel(xi);
    const CVec3 ux = u.at(xi);
    for (std::size_t yi = 0; yi < N; ++yi) {
      if (yi == xi) continue;
      const auto iy = g.unravel(yi);
      const std::size_t d = g.index((iy[0] - ix[0] + n) % n, (iy[1] - ix[1] + n) % n, (iy[2] - ix[2] + n) % n);
      const CVec3 val = cross(kern[d], u.at(yi) - ux);
      for (int c = 0; c < 3; ++c) F[c][xi * N + yi] = val[c];
    }
  }
  const std::vector<int> dims(6, n);
  const double h6 = std::pow(h, 6);
  for (auto& c : F) {
    fft::forward_inplace(c, dims);
    for (auto& v : c) v *= h6;
  }
  std::vector<CVec3> u_hat(N);
  const double h3 = h * h * h;
  for (int c = 0; c < 3; ++c) {
    const auto spec = fft::forward(u[c]);
    for (std::size_t i = 0; i < N; ++i) u_hat[i][c] = h3 * spec[i];
  }

  // Exact discrete identity for the lattice kernel K (odd):
  // F(xi, eta) = -(K^(xi) + K^(eta)) x u^(xi + eta). Checks the 6-D pipeline itself.
  std::vector<CVec3> k_hat(N);
  for (int c = 0; c < 3; ++c) {
    std::vector<Complex> kc(N);
    for (std::size_t d = 0; d < N; ++d) kc[d] = kern[d][c];
    fft::forward_inplace(kc, {n, n, n});
    for (std::size_t i = 0; i < N; ++i) k_hat[i][c] = h3 * kc[i];
  }
  double e2 = 0.0, f2 = 0.0;
  for (std::size_t xi = 0; xi < N; ++xi) {
    const auto ia = g.unravel(xi);
    for (std::size_t eta = 0; eta < N; ++eta) {
      const auto ib = g.unravel(eta);
      const std::size_t sum = g.index((ia[0] + ib[0]) % n, (ia[1] + ib[1]) % n, (ia[2] + ib[2]) % n);
      const CVec3 pred = cross(Complex(-1.0) * (k_hat[xi] + k_hat[eta]), u_hat[sum]);
      for (int c = 0; c < 3; ++c) {
        e2 += std::norm(F[c][xi * N + eta] - pred[c]);
        f2 += std::norm(F[c][xi * N + eta]);
      }
    }
  }

  FourierCurlReport report;
  report.lattice_identity_residual = f2 > 0.0 ? std::sqrt(e2 / f2) : 0.0;
  report.stated = fit(F, u_hat, g, 1.5 + s - 1.0);
  report.dimensional = fit(F, u_hat, g, 1.5 + 1.0 - s);
  for (std::size_t xi = 1; xi < N; ++xi) {
    const auto ia = g.unravel(xi);
    for (std::size_t eta = 1; eta < N; ++eta) {
      const auto ib = g.unravel(eta);
      if (g.index((ia[0] + ib[0]) % n, (ia[1] + ib[1]) % n, (ia[2] + ib[2]) % n) != 0) ++report.pairs;
    }
  }
  return report;
}

}  // namespace fracmax::nonlocal
