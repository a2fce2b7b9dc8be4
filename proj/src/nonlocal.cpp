#include "fracmax/nonlocal.hpp"

#include <stdexcept>

#include "gauss_legendre.hpp"

namespace fracmax::nonlocal {
namespace {

void check_order(double s, const char* where) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument(std::string(where) + ": s must lie in (0, 1)");
}

void check_off_diagonal(const Vec3& x, const Vec3& y, const char* where) {
  if (x == y) throw std::domain_error(std::string(where) + ": kernel is singular on the diagonal x = y");
}

double kernel_prefactor(double s) { return std::sqrt(ConstantsLedger::for_order(s).C_ns / 2.0); }

Vec3 kernel(const Vec3& x, const Vec3& y, double s, double prefactor) {
  const Vec3 d = y - x;
  const double r = norm(d);
  return (prefactor * std::pow(r, -(2.5 + s))) * d;
}

}  // namespace

ConstantsLedger ConstantsLedger::for_order(double s) {
  check_order(s, "ConstantsLedger");
  const double pi32 = std::pow(kPi, 1.5);
  ConstantsLedger c;
  c.s = s;
  c.C_ns = std::pow(2.0, s) * std::tgamma((3.0 + s) / 2.0) / (pi32 * std::abs(std::tgamma(-s / 2.0)));
  c.C_singular = std::pow(4.0, s) * std::tgamma(1.5 + s) / (pi32 * std::abs(std::tgamma(-s)));
  c.c_riesz = riesz_gamma(1.0 - s);
  c.c_pi = (3.0 + s - 1.0) * std::sqrt(2.0) / (std::sqrt(c.C_ns) * c.c_riesz);
  return c;
}

double riesz_gamma(double alpha) {
  return std::pow(kPi, 1.5) * std::pow(2.0, alpha) * std::tgamma(alpha / 2.0) / std::tgamma((3.0 - alpha) / 2.0);
}

Vec3 alpha_kernel(const Vec3& x, const Vec3& y, double s) {
  check_order(s, "alpha_kernel");
  check_off_diagonal(x, y, "alpha_kernel");
  return kernel(x, y, s, kernel_prefactor(s));
}

TwoPointVector d_star(std::shared_ptr<const TrigInterpolant> w, double s) {
  check_order(s, "d_star");
  const double pref = kernel_prefactor(s);
  return [w = std::move(w), s, pref](const Vec3& x, const Vec3& y) -> CVec3 {
    check_off_diagonal(x, y, "d_star");
    const Complex diff = w->eval(y)[0] - w->eval(x)[0];
    return scale(kernel(x, y, s, pref), -diff);
  };
}

TwoPointVector c_star(std::shared_ptr<const TrigInterpolant> w, double s) {
  check_order(s, "c_star");
  const double pref = kernel_prefactor(s);
  return [w = std::move(w), s, pref](const Vec3& x, const Vec3& y) -> CVec3 {
    check_off_diagonal(x, y, "c_star");
    return cross(kernel(x, y, s, pref), w->eval(y) - w->eval(x));
  };
}

TwoPointVector d_star(const ScalarField& w, double s) {
  return d_star(std::make_shared<const TrigInterpolant>(w, kOracleRefine), s);
}

TwoPointVector c_star(const VectorField3& w, double s) {
  return c_star(std::make_shared<const TrigInterpolant>(w, kOracleRefine), s);
}

TwoPointScalar g_star(const VectorField3& v, double s) {
  check_order(s, "g_star");
  auto interp = std::make_shared<const TrigInterpolant>(v, kOracleRefine);
  const double pref = kernel_prefactor(s);
  return [interp, s, pref](const Vec3& x, const Vec3& y) -> Complex {
    check_off_diagonal(x, y, "g_star");
    return -dot(kernel(x, y, s, pref), interp->eval(y) - interp->eval(x));
  };
}

// ---------------------------------------------------------------------------
// Quadrature over R^3 centered at a lattice point.
//
// f = f*eta + f*(1-eta) where eta = 1 on r < r_b/2 and falls to 0 at r_b
// through a polynomial smoothstep. The first piece is integrated in
// spherical coordinates with an antipodally symmetric angular rule (odd
// principal-value terms cancel node by node). On [0, r_b/2] the radial rule
// is Gauss-Jacobi with weight r^p, so the spherical mean r^p (c0 + c1 r^2 +
// ...) is integrated without grading; on [r_b/2, r_b] it is Gauss-Legendre.
// The second piece is smooth; it is summed with the trapezoid rule on the
// refined lattice over the cube of edge L centered at x, and outside that
// cube through the face map z = p / t, t = tau^2.

namespace {

using Integrand = std::function<CVec3(const Vec3& z)>;

// C^6 smoothstep on [0, 1].
double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  constexpr int N = 6;
  double binom_a = 1.0;  // C(N+k, k)
  double binom_b = 1.0;  // C(2N+1, N-k)
  for (int k = 0; k < N; ++k) binom_b = binom_b * (2 * N + 1 - k) / (k + 1);
  double sum = 0.0, xp = 1.0;
  for (int k = 0; k <= N; ++k) {
    sum += binom_a * binom_b * xp;
    xp *= -x;
    binom_a = binom_a * (N + k + 1) / (k + 1);
    binom_b = binom_b * (N - k) / (N + k + 2);
  }
  return std::pow(x, N + 1) * sum;
}

double eta(double r, double rb) { return 1.0 - smoothstep(2.0 * r / rb - 1.0); }

CVec3 sphere_sum(const Integrand& f, double r, const detail::GaussRule& gt, int np) {
  CVec3 shell{};
  for (std::size_t j = 0; j < gt.nodes.size(); ++j) {
    const double mu = gt.nodes[j];
    const double st = std::sqrt(1.0 - mu * mu);
    for (int k = 0; k < np; ++k) {
      const double phi = 2.0 * kPi * (k + 0.5) / np;
      const Vec3 z{r * st * std::cos(phi), r * st * std::sin(phi), r * mu};
      shell = shell + Complex(gt.weights[j] * 2.0 * kPi / np) * f(z);
    }
  }
  return shell;
}

CVec3 near_ball(const Integrand& f, double rb, double p, int nr, int nt, int np) {
  const auto& gj = detail::gauss_jacobi_unit(nr, p);
  const auto& gl = detail::gauss_legendre(nr);
  const auto& gt = detail::gauss_legendre(nt);
  const double half = 0.5 * rb;
  CVec3 acc{};
  const double scale_in = std::pow(half, 1.0 + p);
  for (int i = 0; i < nr; ++i) {
    const double r = half * gj.nodes[i];
    acc = acc + Complex(scale_in * gj.weights[i] * r * r * std::pow(r, -p)) * sphere_sum(f, r, gt, np);
  }
  for (int i = 0; i < nr; ++i) {
    const double r = half * (1.5 + 0.5 * gl.nodes[i]);
    const double w = 0.5 * half * gl.weights[i] * r * r * eta(r, rb);
    if (w == 0.0) continue;
    acc = acc + Complex(w) * sphere_sum(f, r, gt, np);
  }
  return acc;
}

CVec3 lattice_cube(const Integrand& f, const Grid3& g, double rb, int refine) {
  const int M = refine * g.n() / 2;
  const double hf = g.spacing() / refine;
  CVec3 acc{};
  for (int k = -M; k <= M; ++k) {
    const double wk = std::abs(k) == M ? 0.5 : 1.0;
    for (int j = -M; j <= M; ++j) {
      const double wj = std::abs(j) == M ? 0.5 : 1.0;
      for (int i = -M; i <= M; ++i) {
        const Vec3 z{i * hf, j * hf, k * hf};
        const double r = norm(z);
        const double cut = 1.0 - eta(r, rb);
        if (cut == 0.0) continue;
        const double wi = std::abs(i) == M ? 0.5 : 1.0;
        acc = acc + Complex(wi * wj * wk * cut) * f(z);
      }
    }
  }
  return Complex(hf * hf * hf) * acc;
}

CVec3 exterior(const Integrand& f, double a, int nf, int ne) {
  const auto& gf = detail::gauss_legendre(nf);
  const auto& ge = detail::gauss_legendre(ne);
  CVec3 acc{};
  for (int axis = 0; axis < 3; ++axis) {
    const int b = (axis + 1) % 3, c = (axis + 2) % 3;
    for (double sign : {-1.0, 1.0}) {
      for (int iu = 0; iu < nf; ++iu) {
        for (int iv = 0; iv < nf; ++iv) {
          Vec3 p{};
          p[axis] = sign * a;
          p[b] = a * gf.nodes[iu];
          p[c] = a * gf.nodes[iv];
          const double area_w = a * a * gf.weights[iu] * gf.weights[iv];
          for (int it = 0; it < ne; ++it) {
            const double tau = 0.5 * (ge.nodes[it] + 1.0);
            const double t = tau * tau;
            const double w = area_w * a * 0.5 * ge.weights[it] * 2.0 * tau / (t * t * t * t);
            acc = acc + Complex(w) * f((1.0 / t) * p);
          }
        }
      }
    }
  }
  return acc;
}

int scaled(int base, double factor, bool even) {
  int v = static_cast<int>(std::lround(base * factor));
  if (even && v % 2 != 0) ++v;
  return std::max(v, 1);
}

double vec_norm(const CVec3& v) { return norm(v); }

}  // namespace

QuadratureResult<CVec3> integrate_r3(const Integrand& f, const Grid3& g, double singular_power,
                                     const QuadratureOptions& opt) {
  if (!(singular_power > -1.0)) throw std::invalid_argument("integrate_r3: radial density must be integrable");
  if (opt.azimuthal % 2 != 0) throw std::invalid_argument("integrate_r3: azimuthal node count must be even");
  const double rb = opt.ball_cells * g.spacing();
  const double a = g.length() / 2.0;
  if (rb > a) throw std::invalid_argument("integrate_r3: near ball exceeds the box");
  const CVec3 lattice = lattice_cube(f, g, rb, opt.lattice_refine);
  const double factors[3] = {1.0, 1.5, 2.0};
  CVec3 level[3];
  for (int l = 0; l < 3; ++l) {
    const double s = factors[l];
    level[l] = near_ball(f, rb, singular_power, scaled(opt.radial, s, false), scaled(opt.polar, s, false),
                         scaled(opt.azimuthal, s, true)) +
               exterior(f, a, scaled(opt.face, s, false), scaled(opt.exterior_radial, s, false));
  }
  QuadratureResult<CVec3> out;
  out.value = lattice + level[2];
  const double d1 = vec_norm(level[1] - level[0]);
  const double d2 = vec_norm(level[2] - level[1]);
  const double scale = std::max(vec_norm(out.value), 1e-300);
  out.refinement_ratio = d1 <= 1e-13 * scale ? 0.0 : d2 / d1;
  // Differences at the level of the lattice part's own accuracy carry no
  // convergence information; only a slow ratio above that floor is flagged.
  out.flagged = out.refinement_ratio > 0.5 && d2 > std::max(1e-8 * scale, 1e-14);
  return out;
}

QuadratureResult<CVec3> pi_quadrature(const TwoPointVector& v, const Grid3& g, const Vec3& x, double s,
                                      const QuadratureOptions& opt) {
  check_order(s, "pi_quadrature");
  const double c = ConstantsLedger::for_order(s).c_pi;
  auto f = [&](const Vec3& z) -> CVec3 {
    const double r = norm(z);
    return Complex(c * std::pow(r, -1.5)) * v(x, x + z);
  };
  // For the adjoint fields v ~ z (grad w . z) r^{-(5/2+s)} near the diagonal,
  // so the spherical mean of r^2 |z|^{-3/2} v behaves like r^{-s}.
  return integrate_r3(f, g, -s, opt);
}

QuadratureResult<Complex> nonlocal_div(const TwoPointVector& v, const Grid3& g, const Vec3& x, double s,
                                       const QuadratureOptions& opt) {
  check_order(s, "nonlocal_div");
  const double pref = kernel_prefactor(s);
  auto f = [&](const Vec3& z) -> CVec3 {
    const Vec3 y = x + z;
    const CVec3 sym = v(x, y) + v(y, x);
    return {dot(kernel(x, y, s, pref), sym), 0.0, 0.0};
  };
  const auto r = integrate_r3(f, g, 1.0 - 2.0 * s, opt);
  return {r.value[0], r.refinement_ratio, r.flagged};
}

QuadratureResult<CVec3> nonlocal_curl(const TwoPointVector& v, const Grid3& g, const Vec3& x, double s,
                                      const QuadratureOptions& opt) {
  check_order(s, "nonlocal_curl");
  const double pref = kernel_prefactor(s);
  auto f = [&](const Vec3& z) -> CVec3 {
    const Vec3 y = x + z;
    return cross(kernel(x, y, s, pref), v(x, y) + v(y, x));
  };
  return integrate_r3(f, g, 1.0 - 2.0 * s, opt);
}

}  // namespace fracmax::nonlocal
