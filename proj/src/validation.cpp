#include "fracmax/validation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fracmax/helmholtz.hpp"
#include "fracmax/maxwell.hpp"
#include "fracmax/nonlocal.hpp"
#include "fracmax/solver.hpp"
#include "fracmax/spectral.hpp"

namespace fracmax::validation {
namespace {

const double kTwoPi = 2.0 * kPi;

std::string order_tag(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, " (s=%g)", s);
  return buf;
}

double rel(const VectorField3& a, const VectorField3& b) { return l2_norm(a - b) / l2_norm(b); }
double rel(const ScalarField& a, const ScalarField& b) { return l2_norm(a - b) / l2_norm(b); }
double rel(const CVec3& a, const CVec3& b) { return norm(a - b) / norm(b); }

ScalarField gaussian(const Grid3& g, double width) {
  ScalarField f(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 z = g.point(i) - g.center();
    f[i] = std::exp(-dot(z, z) / (width * width));
  }
  return f;
}

// Band-limited, zero-mean and free of Nyquist content.
VectorField3 clean_vector(const Grid3& g, std::uint64_t seed) {
  auto v = solver::random_band_limited(g, g.n() / 2 - 1, seed);
  return v - null_mode_part(v);
}

maxwell::PermittivityModel standard_bump(const Grid3& g, double a) {
  maxwell::PermittivityModel m;
  m.amplitude = a;
  m.center = g.center();
  m.width = 0.6 * g.length() / kTwoPi;
  m.radius = 3.0 * g.length() / kTwoPi;
  return m;
}

// Evaluation points near the center of the box (off the symmetry center).
std::vector<std::size_t> probe_points(const Grid3& g) {
  const int c = g.n() / 2;
  return {g.index(c + 1, c, c - 1), g.index(c - 1, c + 1, c + 1)};
}

}  // namespace

bool Check::pass() const {
  switch (kind) {
    case Kind::at_most:
      return measured <= tolerance;
    case Kind::at_least:
      return measured >= tolerance;
    case Kind::greater_than:
      return measured > tolerance;
    case Kind::flag:
      return measured == 1.0;
    case Kind::info:
      return true;
  }
  return false;
}

Check Check::at_most(std::string name, double measured, double tol, std::string note) {
  return {std::move(name), measured, tol, Kind::at_most, std::move(note)};
}
Check Check::at_least(std::string name, double measured, double bound, std::string note) {
  return {std::move(name), measured, bound, Kind::at_least, std::move(note)};
}
Check Check::greater_than(std::string name, double measured, double bound, std::string note) {
  return {std::move(name), measured, bound, Kind::greater_than, std::move(note)};
}
Check Check::flag(std::string name, bool ok, std::string note) {
  return {std::move(name), ok ? 1.0 : 0.0, 1.0, Kind::flag, std::move(note)};
}
Check Check::info(std::string name, double measured, std::string note) {
  return {std::move(name), measured, 0.0, Kind::info, std::move(note)};
}

bool SuiteResult::passed() const {
  for (const auto& c : checks) {
    if (!c.pass()) return false;
  }
  return true;
}

std::vector<Check> spectral_checks(int n, const std::vector<double>& orders, std::uint64_t seed) {
  const Grid3 g(n, kTwoPi);
  std::vector<Check> out;
  const auto v = solver::random_band_limited(g, n / 2 - 1, seed);
  const ScalarField f = v[0];
  for (double s : orders) {
    const std::string tag = order_tag(s);
    const double t = 0.5 * (1.0 - s);
    out.push_back(Check::at_most("(-D)^s (-D)^t = (-D)^{s+t}" + tag,
                                 rel(frac_laplacian(frac_laplacian(v, s), t), frac_laplacian(v, s + t)), 1e-12));
    out.push_back(Check::at_most("(-D)^s I_{2s} = id on mean-free" + tag,
                                 rel(frac_laplacian(riesz_potential(v, 2.0 * s), s), v - null_mode_part(v)), 1e-12));
    out.push_back(Check::at_most("(-D)^{-s} (-D)^s = id on mean-free" + tag,
                                 rel(frac_laplacian(frac_laplacian(v, s), -s), v - null_mode_part(v)), 1e-12));
  }
  const auto gf = grad(f);
  out.push_back(Check::at_most("curl grad = 0", max_abs(curl(gf)) / max_abs(gf), 1e-12));
  const auto cv = curl(v);
  out.push_back(Check::at_most("div curl = 0", max_abs(div(cv)) / max_abs(cv), 1e-12));
  out.push_back(Check::at_most("curl curl = grad div - Laplacian", rel(curl_curl(v), grad(div(v)) - laplacian(v)),
                               1e-12));
  return out;
}

std::vector<Check> projection_checks(int n, double s) {
  const Grid3 g(n, kTwoPi);
  const std::string tag = order_tag(s);
  const ScalarField w = gaussian(g, kTwoPi / 10);
  const VectorField3 wv(Complex(1.0) * w, Complex(0.5) * w, Complex(-0.3) * w);
  const auto spec_d = riesz_potential(grad(w), 1.0 - s);
  const auto spec_c = riesz_potential(curl(wv), 1.0 - s);
  const auto ds = nonlocal::d_star(w, s);
  const auto cs = nonlocal::c_star(wv, s);

  double err_d = 0.0, err_d_flipped = 0.0, err_c = 0.0;
  bool flagged = false;
  for (std::size_t idx : probe_points(g)) {
    const auto pd = nonlocal::pi_quadrature(ds, g, g.point(idx), s);
    const auto pc = nonlocal::pi_quadrature(cs, g, g.point(idx), s);
    flagged = flagged || pd.flagged || pc.flagged;
    err_d = std::max(err_d, rel(pd.value, spec_d.at(idx)));
    err_d_flipped = std::max(err_d_flipped, rel(pd.value, Complex(-1.0) * spec_d.at(idx)));
    err_c = std::max(err_c, rel(pc.value, spec_c.at(idx)));
  }
  std::vector<Check> out;
  out.push_back(Check::at_most("Pi D* w vs I_{1-s} grad w" + tag, err_d, 2e-2));
  out.push_back(Check::info("Pi D* w vs -I_{1-s} grad w" + tag, err_d_flipped, "sign-corrected diagnostic"));
  out.push_back(Check::at_most("Pi C* w vs I_{1-s} curl w" + tag, err_c, 2e-2));
  out.push_back(Check::flag("quadrature convergence unflagged" + tag, !flagged));

  const auto f = solver::random_band_limited(g, n / 2 - 1, 3)[0];
  const auto pdf = helmholtz::pi_dstar(f, s);
  out.push_back(Check::at_most("Pi C* Pi D* = 0" + tag, max_abs(helmholtz::pi_cstar(pdf, s)) / max_abs(pdf), 1e-13));

  const auto a = solver::random_band_limited(g, n / 2 - 1, 4);
  const auto b = solver::random_band_limited(g, n / 2 - 1, 5);
  const Complex lhs = inner(helmholtz::pi_cstar(a, s), b);
  const Complex rhs = inner(a, helmholtz::pi_cstar(b, s));
  out.push_back(Check::at_most("(Pi C*)* = -Pi C*" + tag, std::abs(lhs + rhs) / std::abs(lhs), 1e-12));
  out.push_back(Check::info("(Pi C*)* = +Pi C*" + tag, std::abs(lhs - rhs) / std::abs(lhs), "self-adjoint diagnostic"));
  return out;
}

std::vector<Check> nonlocal_div_checks(int n, double s) {
  const Grid3 g(n, kTwoPi);
  const std::string tag = order_tag(s);
  const ScalarField w = gaussian(g, kTwoPi / 10);
  const VectorField3 wv(Complex(1.0) * w, Complex(0.5) * w, Complex(-0.3) * w);
  const double ratio = nonlocal::ConstantsLedger::for_order(s).normalization_ratio();
  const auto frac = frac_laplacian(w, s);
  const auto ds = nonlocal::d_star(w, s);
  const auto cs = nonlocal::c_star(wv, s);
  double err_dd = 0.0, lit_dd = 0.0, dc = 0.0;
  for (std::size_t idx : probe_points(g)) {
    const Vec3 x = g.point(idx);
    const Complex v = nonlocal::nonlocal_div(ds, g, x, s).value;
    err_dd = std::max(err_dd, std::abs(v - ratio * frac[idx]) / std::abs(ratio * frac[idx]));
    lit_dd = std::max(lit_dd, std::abs(v - frac[idx]) / std::abs(frac[idx]));
    dc = std::max(dc, std::abs(nonlocal::nonlocal_div(cs, g, x, s).value));
  }
  std::vector<Check> out;
  out.push_back(Check::at_most("D(D* w) vs c (-D)^s w" + tag, err_dd, 5e-2, "c = C_ns/C_singular"));
  out.push_back(Check::info("normalization ratio c" + tag, ratio));
  out.push_back(Check::info("D(D* w) vs (-D)^s w, c = 1" + tag, lit_dd));
  out.push_back(Check::at_most("|D(C* w)| / ||w||" + tag, dc / l2_norm(wv), 5e-2));
  return out;
}

std::vector<Check> fourier_checks(int n, double s, std::uint64_t seed) {
  if (n > 8) throw std::invalid_argument("fourier-lemma suite: n must be <= 8 (6-D transform)");
  const Grid3 g(n, kTwoPi);
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = nonlocal::fourier_cstar_check(solver::random_band_limited(g, n / 2 - 1, seed), s);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::vector<Check> out;
  out.push_back(Check::at_most("lattice transform identity", rep.lattice_identity_residual, 1e-12));
  out.push_back(Check::greater_than("k_ns, exponent n/2+s-1", rep.stated.k_ns, 0.0));
  out.push_back(Check::at_most("fit residual, exponent n/2+s-1", rep.stated.residual, 0.15));
  out.push_back(Check::info("k_ns, exponent n/2+1-s", rep.dimensional.k_ns));
  out.push_back(Check::info("fit residual, exponent n/2+1-s", rep.dimensional.residual));
  out.push_back(Check::at_most("runtime [s]", secs, 120.0));
  return out;
}

std::vector<Check> helmholtz_checks(int n, std::uint64_t seed) {
  const Grid3 g(n, kTwoPi);
  std::vector<Check> out;
  for (double s : {0.5, 0.75}) {
    const std::string tag = order_tag(s);
    const auto v = clean_vector(g, seed);
    const auto e = helmholtz::pi_inverse(v, s);
    out.push_back(Check::at_most("pi(pi_inverse(v)) = v" + tag, rel(helmholtz::pi(e), v), 1e-12));
    const auto e2 = helmholtz::pi_inverse(helmholtz::pi(e), s);
    out.push_back(Check::at_most("pi_inverse(pi(e)) = e" + tag,
                                 std::max(rel(e2.phi, e.phi), rel(e2.a, e.a)), 1e-12));
    const auto other = helmholtz::pi_inverse(clean_vector(g, seed + 1), s);
    double gauge = std::max(helmholtz::gauge_defect(e), helmholtz::gauge_defect(e2));
    gauge = std::max(gauge, helmholtz::gauge_defect(helmholtz::tilde_curl(e)));
    gauge = std::max(gauge, helmholtz::gauge_defect(e + Complex(0.3, -0.7) * other));
    out.push_back(Check::at_most("gauge div a = 0 preserved" + tag, gauge, 1e-12));
  }
  return out;
}

std::vector<Check> limit_checks(int n) {
  const Grid3 g(n, kTwoPi);
  const auto f = gaussian(g, kTwoPi / 10);
  const auto gf = grad(f);
  std::vector<double> gaps;
  for (double s : {0.9, 0.99, 0.999}) gaps.push_back(l2_norm(helmholtz::pi_dstar(f, s) - gf) / l2_norm(gf));
  std::vector<Check> out;
  out.push_back(Check::info("operator gap s=0.9", gaps[0]));
  out.push_back(Check::info("operator gap s=0.99", gaps[1]));
  out.push_back(Check::flag("operator gap decreasing", gaps[1] < gaps[0] && gaps[2] < gaps[1]));
  out.push_back(Check::at_most("operator gap s=0.999 / ||grad f||", gaps[2], 1e-2));
  return out;
}

std::vector<Check> vacuum_checks(int n) {
  const Grid3 g(n, kTwoPi);
  const auto vac = maxwell::eval_permittivity(maxwell::PermittivityModel::vacuum(g), g);
  std::vector<Check> out;
  const std::vector<std::pair<Vec3, Vec3>> waves = {{{3, 0, 0}, {0, 1, 0}}, {{2, 2, 1}, {1, -1, 0}},
                                                    {{1, -2, 2}, {2, 1, 0}}, {{0, 0, -3}, {0.5, 1, 0}}};
  for (double s : {0.5, 0.75, 0.9}) {
    const maxwell::FracParams fp{s, std::pow(3.0, s), 1.0};  // kappa = 3
    double worst = 0.0;
    for (const auto& [xi, p] : waves) {
      VectorField3 u(g);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Complex ph = std::polar(1.0, dot(xi, g.point(i)));
        u.set(i, CVec3{ph * p[0], ph * p[1], ph * p[2]});
      }
      worst = std::max(worst, max_abs(maxwell::apply_A(u, vac, fp)) / max_abs(u));
    }
    out.push_back(Check::at_most("apply_A annihilates |xi| = k^{1/s} waves" + order_tag(s), worst, 1e-12));

    double amp_err = 0.0;
    for (double k : {0.7, 1.0, 1.3}) {
      const maxwell::FracParams fk{s, k, 1.0};
      const maxwell::IncidentSpec inc{{0.3, -1.0, 2.0}, {0.0, 0.6, 0.8}};
      const Vec3 pt = inc.p - dot(inc.p, inc.d) * inc.d;
      const double expect = std::pow(k, 1.0 + 1.0 / s) * norm(pt);
      const auto e = maxwell::incident_one_point(inc, fk, g);
      for (std::size_t i = 0; i < g.size(); ++i) amp_err = std::max(amp_err, std::abs(norm(e.at(i)) - expect) / expect);
    }
    out.push_back(Check::at_most("|E_i| = k^{1+1/s} |p - (p.d) d|" + order_tag(s), amp_err, 1e-12));
  }
  return out;
}

std::vector<Check> coercivity_checks(int n, std::uint64_t seed) {
  const Grid3 g(n, kTwoPi);
  const auto eps = maxwell::eval_permittivity(standard_bump(g, 1.0), g);
  const maxwell::FracParams fp{0.75, 1.0, 1.0};
  const auto rep = maxwell::coercivity_sample(eps, fp, 100, std::max(1, n / 4), seed);
  std::vector<Check> out;
  out.push_back(Check::info("l = 1 + C_eps + k^2 ||eps||_inf", rep.l));
  out.push_back(Check::at_least("worst (Re B(u,u) + l||u||^2) / ||u||^2_{H^s_delta}", rep.worst_ratio, 0.1));
  out.push_back(Check::info("samples", rep.samples));
  out.push_back(Check::info("bound constant max|B(u,v)| / (||u|| ||v||)", rep.bound_constant));
  out.push_back(Check::at_most("|Im B(u,u)| / |B(u,u)| on real fields", rep.max_imag_real_fields, 1e-12));
  return out;
}

std::vector<Check> maxwell_checks(int n, std::uint64_t seed) {
  const Grid3 g(n, kTwoPi);
  std::vector<Check> out = vacuum_checks(n);
  const auto eps = maxwell::eval_permittivity(standard_bump(g, 0.8), g);
  const auto u = clean_vector(g, seed);

  const maxwell::FracParams classical{1.0, 1.0, 1.0};
  const auto direct = Complex(-1.0) * grad(pointwise_dot(eps.grad_log_eps, u));
  out.push_back(Check::at_most("P at s = 1 is -grad(grad log eps . u)", rel(maxwell::p_op(u, eps, classical), direct),
                               1e-12));
  for (double s : {0.5, 0.75}) {
    const auto lhs = frac_laplacian(curl_curl(u), s - 1.0);
    const auto rhs = frac_laplacian(u, s) + frac_laplacian(grad(div(u)), s - 1.0);
    out.push_back(Check::at_most("I_{2-2s} curl curl = (-D)^s + I_{2-2s} grad div" + order_tag(s), rel(lhs, rhs),
                                 1e-12));
  }
  const maxwell::FracParams fp{0.75, 1.0, 1.0};
  const auto h = maxwell::recover_H(u, fp);
  out.push_back(Check::at_most("div H = 0", max_abs(div(h)) / max_abs(h), 1e-12));

  // k^2 = 1.34 keeps |xi|^{2s} = k^2 off the lattice at s = 0.75.
  if (n >= 8) {
    solver::ScatterProblem p;
    p.fp = {0.75, std::sqrt(1.34), 1.0};
    p.grid = g;
    p.eps = standard_bump(g, 1.0);
    p.controls.tol = 1e-11;
    const auto m = solver::manufactured_solve(p, seed, std::min(4, n / 2 - 1));
    out.push_back(Check::flag("manufactured solve converged", m.solve.converged));
    out.push_back(Check::info("manufactured GMRES iterations", m.solve.iterations));
    out.push_back(Check::at_most("manufactured relative error", m.relative_error, 1e-6));
  }
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"spectral", "pi", "helmholtz", "fourier-lemma", "coercivity",
                                                 "maxwell"};
  return names;
}

SuiteResult run_suite(const std::string& suite, int n, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("grid size n must be even and >= 4");
  SuiteResult r{suite, {}};
  auto append = [&r](std::vector<Check> c) { r.checks.insert(r.checks.end(), c.begin(), c.end()); };
  if (suite == "spectral") {
    append(spectral_checks(n, {0.5, 0.75, 0.9}, seed));
  } else if (suite == "pi") {
    if (n > 32) throw std::invalid_argument("pi suite: n must be <= 32 (quadrature cost)");
    append(projection_checks(n, 0.5));
    append(nonlocal_div_checks(n, 0.5));
  } else if (suite == "helmholtz") {
    append(helmholtz_checks(n, seed));
    append(limit_checks(n));
  } else if (suite == "fourier-lemma") {
    append(fourier_checks(n, 0.5, seed));
  } else if (suite == "coercivity") {
    append(coercivity_checks(n, seed));
  } else if (suite == "maxwell") {
    append(maxwell_checks(n, seed));
  } else {
    std::string known;
    for (const auto& s : suite_names()) known += (known.empty() ? "" : ", ") + s;
    throw std::invalid_argument("unknown suite '" + suite + "' (known: " + known + ")");
  }
  return r;
}

namespace {
std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}
}  // namespace

std::string format_table(const std::vector<SuiteResult>& results) {
  std::string out;
  char line[512];
  for (const auto& r : results) {
    out += "== " + r.suite + (r.passed() ? " [PASS]" : " [FAIL]") + "\n";
    for (const auto& c : r.checks) {
      const char* status = c.kind == Check::Kind::info ? "info" : (c.pass() ? "PASS" : "FAIL");
      std::string bound;
      switch (c.kind) {
        case Check::Kind::at_most:
          bound = "<= " + short_num(c.tolerance);
          break;
        case Check::Kind::at_least:
          bound = ">= " + short_num(c.tolerance);
          break;
        case Check::Kind::greater_than:
          bound = "> " + short_num(c.tolerance);
          break;
        case Check::Kind::flag:
          bound = "== 1";
          break;
        case Check::Kind::info:
          break;
      }
      std::snprintf(line, sizeof line, "  %-4s  %-70s %-12.4e %s", status, c.name.c_str(), c.measured, bound.c_str());
      out += line;
      if (!c.note.empty()) out += "  (" + c.note + ")";
      out += "\n";
    }
  }
  return out;
}

}  // namespace fracmax::validation
