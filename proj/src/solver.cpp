#include "fracmax/solver.hpp"

#include <cmath>
#include <random>

#include "fracmax/fft.hpp"
#include "fracmax/spectral.hpp"

namespace fracmax::solver {
namespace {

using Flat = std::vector<Complex>;

Flat flatten(const VectorField3& v) {
  const std::size_t n = v.grid().size();
  Flat out(3 * n);
  for (int a = 0; a < 3; ++a) std::copy(v[a].values().begin(), v[a].values().end(), out.begin() + a * n);
  return out;
}

VectorField3 unflatten(const Grid3& g, const Flat& f) {
  const std::size_t n = g.size();
  VectorField3 out(g);
  for (int a = 0; a < 3; ++a) std::copy(f.begin() + a * n, f.begin() + (a + 1) * n, out[a].values().begin());
  return out;
}

Complex dotc(const Flat& a, const Flat& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(const Flat& a) { return std::sqrt(std::abs(dotc(a, a))); }

void axpy(Complex c, const Flat& x, Flat& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
}

Flat residual(const LinearOp& A, const VectorField3& b, const Flat& x) {
  Flat r = flatten(b);
  const Flat ax = flatten(A(unflatten(b.grid(), x)));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= ax[i];
  return r;
}

void require_finite(double v, int iteration) {
  if (!std::isfinite(v)) {
    throw std::runtime_error("gmres: non-finite value in iterate at iteration " + std::to_string(iteration));
  }
}

ScalarMultiplier shifted_inverse(const maxwell::FracParams& fp, double shift, double power) {
  const double s = fp.s;
  return {[=](const Wavevector& w) { return Complex(std::pow(std::pow(w.magnitude, 2.0 * s) + shift, power)); },
          ZeroModePolicy::value(std::pow(shift, power))};
}

// kappa d is a lattice vector: the incident wave is itself periodic on the box.
bool incident_periodic(const ScatterProblem& p) {
  const double kappa = p.fp.kappa();
  for (int a = 0; a < 3; ++a) {
    const double m = kappa * p.incident.d[a] * p.grid.length() / (2.0 * kPi);
    if (std::abs(m - std::round(m)) > 1e-9) return false;
  }
  return true;
}

ScatterProblem classical(const ScatterProblem& p) {
  ScatterProblem q = p;
  q.fp.s = 1.0;
  return q;
}

ScatterSolution solve_impl(const ScatterProblem& p, bool allow_classical) {
  p.fp.validate(allow_classical);
  p.controls.validate();
  const Grid3& g = p.grid;
  const auto eps = maxwell::eval_permittivity(p.eps, g);

  ScatterSolution out{VectorField3(g), VectorField3(g), VectorField3(g), {}};
  SolveReport& rep = out.report;
  out.e_i = maxwell::incident_one_point(p.incident, p.fp, g, &rep.incident_degenerate);
  rep.eps_min = eps.eps_min;
  rep.eps_max = eps.eps_max;
  if (rep.incident_degenerate) rep.warnings.push_back("polarization parallel to direction: incident field is zero");
  if (p.eps.amplitude != 0.0 && incident_periodic(p)) {
    rep.warnings.push_back(
        "incident wave is periodic on the box: the periodic problem is solved by E_s = -E_i, so the total field "
        "vanishes up to solver error");
  }
  const VectorField3 F = maxwell::rhs_F(out.e_i, eps, p.fp);

  const GmresResult res = solve_rhs(p, F);
  out.e_s = res.x;
  rep.iterations = res.iterations;
  rep.final_relative_residual = res.relative_residual;
  rep.residual_history = res.history;
  rep.converged = res.converged;

  const double fnorm = l2_norm(F);
  const WeightedNormParams wp{p.fp.delta, p.fp.s};
  rep.rhs_l2_delta = weighted_norms(F, wp).l2_delta;
  rep.rhs_dual_norm_proxy = l2_norm(apply(shifted_inverse(p.fp, 1.0, -0.5), F));
  rep.solution_norms = weighted_norms(out.e_s, wp);

  const auto cc = maxwell::curlcurl_residual(out.e_s, out.e_i, eps, p.fp);
  const double us = l2_norm(out.e_s), total = l2_norm(out.e_s + out.e_i);
  rep.curlcurl_form_residual = us > 0.0 ? cc.curlcurl_form / us : cc.curlcurl_form;
  rep.divergence_constraint_residual = total > 0.0 ? cc.divergence / total : cc.divergence;
  rep.reduced_form_residual = fnorm > 0.0 ? cc.reduced_form / fnorm : cc.reduced_form;

  if (!res.converged) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "solver did not converge in %d iterations (relative residual %.3e > tol %.1e); "
                  "k may be close to a resonance",
                  res.iterations, res.relative_residual, p.controls.tol);
    throw SolveFailure(buf, rep, out.e_s);
  }
  out.h = maxwell::recover_H(out.e_s, p.fp) + maxwell::incident_H(p.incident, p.fp, g);
  return out;
}

}  // namespace

void SolveControls::validate() const {
  if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("SolveControls: tol must lie in (0, 1)");
  if (max_iter < 1) throw std::invalid_argument("SolveControls: max_iter must be >= 1");
  if (restart < 1) throw std::invalid_argument("SolveControls: restart must be >= 1");
}

GmresResult gmres(const LinearOp& A, const VectorField3& b, const VectorField3& x0, const SolveControls& c,
                  const LinearOp& M) {
  c.validate();
  require_same_grid(b.grid(), x0.grid(), "gmres");
  const Grid3& g = b.grid();
  GmresResult out{x0, 0, 0.0, {}, false};

  Flat x = flatten(x0);
  Flat r = residual(A, b, x);
  const double bnorm = norm2(flatten(b));
  const double ref = bnorm > 0.0 ? bnorm : norm2(r);
  if (ref == 0.0) {
    out.history.push_back(0.0);
    out.converged = true;
    return out;
  }
  double rel = norm2(r) / ref;
  require_finite(rel, 0);
  out.history.push_back(rel);

  auto precondition = [&](const Flat& v) { return M ? flatten(M(unflatten(g, v))) : v; };
  const int m = c.restart;
  int its = 0;
  while (rel > c.tol && its < c.max_iter) {
    const double beta = norm2(r);
    std::vector<Flat> V;
    V.reserve(m + 1);
    V.push_back(r);
    for (auto& v : V[0]) v /= beta;
    std::vector<std::vector<Complex>> H(m + 1, std::vector<Complex>(m, 0.0));
    std::vector<Complex> cs(m), sn(m), rhs(m + 1, 0.0);
    rhs[0] = beta;

    int j = 0;
    for (; j < m && its < c.max_iter; ++j) {
      Flat w = flatten(A(unflatten(g, precondition(V[j]))));
      ++its;
      for (int i = 0; i <= j; ++i) {
        H[i][j] = dotc(V[i], w);
        axpy(-H[i][j], V[i], w);
      }
      const double hn = norm2(w);
      require_finite(hn, its);
      H[j + 1][j] = hn;
      for (int i = 0; i < j; ++i) {
        const Complex t = cs[i] * H[i][j] + sn[i] * H[i + 1][j];
        H[i + 1][j] = -std::conj(sn[i]) * H[i][j] + cs[i] * H[i + 1][j];
        H[i][j] = t;
      }
      const Complex a = H[j][j];
      const double t = std::hypot(std::abs(a), hn);
      if (std::abs(a) == 0.0) {
        cs[j] = 0.0;
        sn[j] = 1.0;
        H[j][j] = hn;
      } else {
        const Complex phase = a / std::abs(a);
        cs[j] = std::abs(a) / t;
        sn[j] = phase * hn / t;
        H[j][j] = phase * t;
      }
      H[j + 1][j] = 0.0;
      rhs[j + 1] = -std::conj(sn[j]) * rhs[j];
      rhs[j] = cs[j] * rhs[j];
      const double est = std::abs(rhs[j + 1]) / ref;
      out.history.push_back(est);
      if (est <= c.tol || hn <= 1e-14 * beta) {
        ++j;
        break;
      }
      V.push_back(std::move(w));
      for (auto& v : V.back()) v /= hn;
    }

    std::vector<Complex> y(j);
    for (int i = j - 1; i >= 0; --i) {
      Complex s = rhs[i];
      for (int l = i + 1; l < j; ++l) s -= H[i][l] * y[l];
      y[i] = s / H[i][i];
    }
    Flat z(x.size(), 0.0);
    for (int i = 0; i < j; ++i) axpy(y[i], V[i], z);
    axpy(1.0, precondition(z), x);

    r = residual(A, b, x);
    rel = norm2(r) / ref;
    require_finite(rel, its);
    out.history.back() = rel;
  }
  out.x = unflatten(g, x);
  out.iterations = its;
  out.relative_residual = rel;
  out.converged = rel <= c.tol;
  return out;
}

VectorField3 apply_preconditioner(const VectorField3& r, const maxwell::FracParams& fp) {
  if (!(fp.k > 0.0)) throw std::invalid_argument("apply_preconditioner: k must be positive");
  return apply(shifted_inverse(fp, fp.k * fp.k, -1.0), r);
}

VectorField3 born_approximation(const VectorField3& F, const maxwell::FracParams& fp) {
  const Grid3& g = F.grid();
  const double k2 = fp.k * fp.k;
  std::array<std::vector<Complex>, 3> spec{fft::forward(F[0]), fft::forward(F[1]), fft::forward(F[2])};
  double peak = 0.0;
  for (const auto& s : spec) {
    for (const auto& v : s) peak = std::max(peak, std::abs(v));
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double sym = std::pow(wavevector(g, i).magnitude, 2.0 * fp.s) - k2;
    const bool excited = std::abs(spec[0][i]) + std::abs(spec[1][i]) + std::abs(spec[2][i]) > 1e-14 * peak;
    if (std::abs(sym) <= 1e-12 * std::max(1.0, k2)) {
      if (excited) throw std::domain_error("born_approximation: F excites a resonant lattice mode |xi|^{2s} = k^2");
      for (auto& s : spec) s[i] = 0.0;
      continue;
    }
    for (auto& s : spec) s[i] /= sym;
  }
  return VectorField3(fft::inverse(g, std::move(spec[0])), fft::inverse(g, std::move(spec[1])),
                      fft::inverse(g, std::move(spec[2])));
}

GmresResult solve_rhs(const ScatterProblem& p, const VectorField3& F) {
  p.fp.validate(true);
  require_same_grid(p.grid, F.grid(), "solve_rhs");
  const auto eps = maxwell::eval_permittivity(p.eps, p.grid);
  const auto fp = p.fp;
  const LinearOp A = [&](const VectorField3& u) { return maxwell::apply_A(u, eps, fp); };
  LinearOp M;
  if (p.controls.precond == Precond::shifted_fraclap) {
    M = [&](const VectorField3& r) { return apply_preconditioner(r, fp); };
  }
  return gmres(A, F, VectorField3(p.grid), p.controls, M);
}

ScatterSolution solve_scattering(const ScatterProblem& p) { return solve_impl(p, false); }

ScatterSolution classical_reference_solve(const ScatterProblem& p) { return solve_impl(classical(p), true); }

UniquenessResult homogeneous_uniqueness_check(const ScatterProblem& p, int starts, std::uint64_t seed) {
  p.fp.validate(true);
  if (starts < 1) throw std::invalid_argument("homogeneous_uniqueness_check: starts must be >= 1");
  const Grid3& g = p.grid;
  const auto eps = maxwell::eval_permittivity(p.eps, g);
  const auto fp = p.fp;
  const LinearOp A = [&](const VectorField3& u) { return maxwell::apply_A(u, eps, fp); };
  const LinearOp M = [&](const VectorField3& r) { return apply_preconditioner(r, fp); };
  SolveControls c = p.controls;
  c.tol = std::min(c.tol, 1e-13);
  const WeightedNormParams wp{fp.delta, fp.s};

  UniquenessResult out;
  out.unique = true;
  for (int t = 0; t < starts; ++t) {
    const VectorField3 x0 = random_band_limited(g, g.n() / 2 - 1, seed + static_cast<std::uint64_t>(t));
    const auto res = gmres(A, VectorField3(g), x0, c, p.controls.precond == Precond::none ? LinearOp{} : M);
    const double ratio = weighted_norms(res.x, wp).hs_delta / weighted_norms(x0, wp).hs_delta;
    out.ratios.push_back(ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
    if (!(ratio <= 1e-8)) out.unique = false;
  }
  return out;
}

ManufacturedResult manufactured_solve(const ScatterProblem& p, std::uint64_t seed, int band) {
  p.fp.validate(true);
  const auto eps = maxwell::eval_permittivity(p.eps, p.grid);
  const VectorField3 u_star = random_band_limited(p.grid, band, seed);
  const VectorField3 F = maxwell::apply_A(u_star, eps, p.fp);
  ManufacturedResult out{0.0, solve_rhs(p, F)};
  out.relative_error = l2_norm(out.solve.x - u_star) / l2_norm(u_star);
  return out;
}

VectorField3 random_band_limited(const Grid3& g, int band, std::uint64_t seed) {
  if (band < 0 || band >= g.n() / 2) throw std::invalid_argument("random_band_limited: band must lie in [0, n/2)");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  VectorField3 out(g);
  for (int a = 0; a < 3; ++a) {
    std::vector<Complex> spec(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto ijk = g.unravel(i);
      const Complex v(normal(rng), normal(rng));
      bool inside = true;
      for (int d = 0; d < 3; ++d) inside = inside && std::abs(g.signed_index(ijk[d])) <= band;
      if (inside) spec[i] = v;
    }
    out[a] = fft::inverse(g, std::move(spec));
  }
  return out;
}

}  // namespace fracmax::solver
