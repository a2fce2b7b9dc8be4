#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "fracmax/helmholtz.hpp"
#include "fracmax/solver.hpp"
#include "fracmax/spectral.hpp"
#include "test_support.hpp"

using namespace fracmax;
using namespace fracmax::maxwell;
using namespace fracmax::solver;
using namespace testing_support;

namespace {

const double kTwoPi = 2.0 * kPi;

// Bump scatterer in the 2 pi box. k is chosen so that |xi|^{2s} = k^2 has no
// lattice solution and the incident wave is not periodic on the box.
ScatterProblem off_lattice(int n, double s, double k, double a) {
  ScatterProblem p;
  p.fp = {s, k, 1.0};
  p.grid = Grid3(n, kTwoPi);
  p.eps.amplitude = a;
  p.eps.center = p.grid.center();
  p.eps.width = 0.6;
  p.eps.radius = 3.0;
  p.controls.tol = 1e-10;
  return p;
}

}  // namespace

TEST_CASE("gmres on a diagonal operator", "[solver][gmres]") {
  Grid3 g(8, kTwoPi);
  ScalarField d(g);
  for (std::size_t i = 0; i < g.size(); ++i) d[i] = Complex(1.0 + 0.01 * static_cast<double>(i % 97), 0.3);
  const LinearOp A = [&](const VectorField3& u) { return hadamard(d, u); };
  const auto x_true = random_vector(g, 1);
  const auto b = A(x_true);
  SolveControls c;
  c.tol = 1e-12;
  c.restart = 10;
  const auto r = gmres(A, b, VectorField3(g), c);
  CHECK(r.converged);
  CHECK(rel_err(r.x, x_true) <= 1e-10);
  CHECK(r.relative_residual <= 1e-12);
  CHECK(r.history.size() == static_cast<std::size_t>(r.iterations) + 1);
  // True residual at restart boundaries never grows.
  for (std::size_t i = c.restart; i < r.history.size(); i += c.restart) CHECK(r.history[i] <= r.history[i - c.restart]);

  const auto z = gmres(A, VectorField3(g), VectorField3(g), c);
  CHECK(z.converged);
  CHECK(z.iterations == 0);
  CHECK(max_abs(z.x) == 0.0);

  const LinearOp bad = [&](const VectorField3& u) {
    auto out = u;
    out[0][0] = std::numeric_limits<double>::quiet_NaN();
    return out;
  };
  CHECK_THROWS_WITH(gmres(bad, b, VectorField3(g), c), Catch::Matchers::ContainsSubstring("iteration"));

  SolveControls bad_c;
  bad_c.tol = 0.0;
  CHECK_THROWS_AS(bad_c.validate(), std::invalid_argument);
  bad_c.tol = 1e-8;
  bad_c.max_iter = 0;
  CHECK_THROWS_AS(bad_c.validate(), std::invalid_argument);
}

TEST_CASE("shifted fractional preconditioner", "[solver][precond]") {
  Grid3 g(16, kTwoPi);
  const FracParams fp{0.75, 1.3, 1.0};
  const auto u = random_vector(g, 2);
  const auto shifted = frac_laplacian(u, fp.s) + Complex(fp.k * fp.k) * u;
  CHECK(rel_err(apply_preconditioner(shifted, fp), u) <= 1e-13);

  const auto vac = eval_permittivity(PermittivityModel::vacuum(g), g);
  const auto lhs = apply_preconditioner(apply_A(u, vac, fp), fp);
  const auto rhs = u - Complex(2.0 * fp.k * fp.k) * apply_preconditioner(u, fp);
  CHECK(rel_err(lhs, rhs) <= 1e-13);
  CHECK_THROWS_AS(apply_preconditioner(u, FracParams{0.75, 0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("vacuum solve", "[solver][vacuum]") {
  auto p = off_lattice(16, 0.75, 1.0, 0.0);
  const auto sol = solve_scattering(p);
  CHECK(sol.report.converged);
  CHECK(sol.report.iterations <= 1);
  CHECK(max_abs(sol.e_s) == 0.0);
  CHECK(rel_err(sol.h, incident_H(p.incident, p.fp, p.grid)) <= 1e-15);
  CHECK(max_abs(classical_reference_solve(p).e_s) == 0.0);

  const auto u = homogeneous_uniqueness_check(off_lattice(16, 0.75, std::sqrt(1.34), 0.0), 5, 3);
  CHECK(u.unique);
  CHECK(u.ratios.size() == 5);
}

TEST_CASE("scattering solve diagnostics", "[solver][scatter]") {
  // s = 0.5, k^2 = 1.2 sits between the lattice values |xi| = 1 and sqrt(2).
  const auto p = off_lattice(16, 0.5, std::sqrt(1.2), 0.3);
  const auto sol = solve_scattering(p);
  const auto& r = sol.report;
  CHECK(r.converged);
  CHECK(r.final_relative_residual <= p.controls.tol);
  CHECK(r.warnings.empty());

  // Residual certificate.
  const auto eps = eval_permittivity(p.eps, p.grid);
  const auto F = rhs_F(sol.e_i, eps, p.fp);
  const double again = l2_norm(apply_A(sol.e_s, eps, p.fp) - F) / l2_norm(F);
  CHECK(std::abs(again - r.final_relative_residual) <= 1e-12);
  CHECK(r.reduced_form_residual == Catch::Approx(again).epsilon(1e-12));

  CHECK(r.solution_norms.hs_delta > 0.0);
  CHECK(r.rhs_dual_norm_proxy > 0.0);
  CHECK(std::isfinite(r.curlcurl_form_residual));
  CHECK(max_abs(div(sol.h)) <= 1e-10 * max_abs(sol.h));

  // Linearity in F: same Krylov space, scaled.
  const auto a = solve_rhs(p, F);
  const auto b = solve_rhs(p, Complex(2.0) * F);
  CHECK(rel_err(b.x, Complex(2.0) * a.x) <= 1e-10);

  // Two-point lift of the solution; pi_inverse drops the lattice null modes.
  const auto lifted = helmholtz::pi_inverse(sol.e_s, p.fp.s);
  CHECK(rel_err(helmholtz::pi(lifted), sol.e_s - null_mode_part(sol.e_s)) <= 1e-12);
  CHECK(helmholtz::gauge_defect(lifted) <= 1e-12);
}

TEST_CASE("lattice-aligned incident wave gives a vanishing total field", "[solver][scatter]") {
  auto p = off_lattice(16, 0.5, 1.0, 1.0);  // kappa = 1
  const auto sol = solve_scattering(p);
  CHECK(sol.report.warnings.size() == 1);
  CHECK(l2_norm(sol.e_s + sol.e_i) <= 1e-6 * l2_norm(sol.e_i));
}

TEST_CASE("non-convergence is reported with its history", "[solver][failure]") {
  auto p = off_lattice(16, 0.5, std::sqrt(1.2), 1.0);
  p.controls.max_iter = 3;
  p.controls.precond = Precond::none;
  try {
    solve_scattering(p);
    FAIL("expected SolveFailure");
  } catch (const SolveFailure& f) {
    CHECK(f.report().iterations == 3);
    CHECK(f.report().residual_history.size() == 4);
    CHECK_FALSE(f.report().converged);
    CHECK(std::string(f.what()).find("did not converge") != std::string::npos);
  }
  p.fp.s = 1.0;
  CHECK_THROWS_AS(solve_scattering(p), std::invalid_argument);
}

TEST_CASE("manufactured solution", "[solver][manufactured]") {
  auto p = off_lattice(16, 0.75, 1.0, 1.0);
  p.controls.tol = 1e-11;
  const auto m = manufactured_solve(p, 5, 4);
  CHECK(m.solve.converged);
  CHECK(m.relative_error <= 1e-6);

  auto q = p;
  q.controls.precond = Precond::none;
  q.controls.max_iter = 300;
  const auto plain = manufactured_solve(q, 5, 4);
  CHECK(m.solve.iterations < plain.solve.iterations);

  auto c = p;
  c.fp.s = 1.0;
  CHECK(manufactured_solve(c, 5, 4).relative_error <= 1e-6);
}

TEST_CASE("weak scatterer matches the Born approximation", "[solver][born]") {
  const auto p = off_lattice(16, 0.5, std::sqrt(1.2), 1e-3);
  const auto sol = solve_scattering(p);
  const auto eps = eval_permittivity(p.eps, p.grid);
  const auto born = born_approximation(rhs_F(sol.e_i, eps, p.fp), p.fp);
  CHECK(rel_err(born, sol.e_s) <= 5e-2);

  // On a resonant lattice mode the multiplier cannot be inverted.
  const auto wave = plane_wave(p.grid, {1, 0, 0});
  CHECK_THROWS_AS(born_approximation(VectorField3(wave, wave, wave), FracParams{0.5, 1.0, 1.0}), std::domain_error);
}

TEST_CASE("homogeneous problem and stability", "[solver][uniqueness]") {
  const auto p = off_lattice(16, 0.75, std::sqrt(1.34), 1.0);
  const auto u = homogeneous_uniqueness_check(p, 5, 11);
  CHECK(u.unique);
  CHECK(u.max_ratio <= 1e-8);

  // ||u||_{H^s_delta} / ||F||_{L^2_delta} over random weak scatterers.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> amp(-5e-3, 5e-3), shift(-0.1, 0.1);
  double lo = 1e300, hi = 0.0;
  for (int t = 0; t < 10; ++t) {
    auto q = off_lattice(16, 0.75, std::sqrt(1.34), amp(rng));
    q.eps.center = q.grid.center() + Vec3{shift(rng), shift(rng), shift(rng)};
    q.controls.tol = 1e-8;
    const auto sol = solve_scattering(q);
    const double ratio = sol.report.solution_norms.hs_delta / sol.report.rhs_l2_delta;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(std::isfinite(hi));
  CHECK(hi <= 10.0 * lo);
}

TEST_CASE("solutions approach the classical solve as s -> 1", "[solver][limit]") {
  // k^2 = 1.5 stays off |xi|^{2s} for every s in [0.9, 1].
  const double k = std::sqrt(1.5);
  const auto ref = classical_reference_solve(off_lattice(16, 0.9, k, 0.5));
  std::vector<double> gaps;
  for (double s : {0.9, 0.99, 0.999}) {
    const auto sol = solve_scattering(off_lattice(16, s, k, 0.5));
    gaps.push_back(rel_err(sol.e_s, ref.e_s));
  }
  CHECK(gaps[1] < gaps[0]);
  CHECK(gaps[2] < gaps[1]);
}
