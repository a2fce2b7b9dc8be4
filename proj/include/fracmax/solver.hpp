#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracmax/maxwell.hpp"
#include "fracmax/norms.hpp"

namespace fracmax::solver {

enum class Precond { none, shifted_fraclap };

struct SolveControls {
  double tol = 1e-8;  // relative residual target
  int max_iter = 500;
  int restart = 50;
  Precond precond = Precond::shifted_fraclap;

  void validate() const;
};

using LinearOp = std::function<VectorField3(const VectorField3&)>;

struct GmresResult {
  VectorField3 x;
  int iterations = 0;
  double relative_residual = 0.0;  // true residual ||b - A x|| / ||b|| (or / ||b - A x0|| when b = 0)
  std::vector<double> history;     // relative residual after every iteration; true value at restarts
  bool converged = false;
};

/// Restarted GMRES with optional right preconditioner M (solves A M y = b,
/// x = x0 + M y). Throws std::runtime_error naming the iteration if a
/// non-finite value appears.
GmresResult gmres(const LinearOp& A, const VectorField3& b, const VectorField3& x0, const SolveControls& c,
                  const LinearOp& M = nullptr);

/// ((-Delta)^s + k^2)^{-1} r.
VectorField3 apply_preconditioner(const VectorField3& r, const maxwell::FracParams& fp);

/// Solution of the vacuum equation ((-Delta)^s - k^2) u = F by one multiplier
/// inversion (first Born approximation). Throws if |xi|^{2s} = k^2 on a lattice
/// mode that F excites.
VectorField3 born_approximation(const VectorField3& F, const maxwell::FracParams& fp);

/// Everything a scattering solve needs; grid already snapped.
struct ScatterProblem {
  maxwell::FracParams fp;
  Grid3 grid{16, 2.0 * kPi};
  maxwell::PermittivityModel eps;
  maxwell::IncidentSpec incident;
  SolveControls controls;
};

struct SolveReport {
  int iterations = 0;
  double final_relative_residual = 0.0;
  std::vector<double> residual_history;
  double divergence_constraint_residual = 0.0;  // ||div(eps E_s + (eps-1) E_i)|| / ||E_i + E_s||
  double curlcurl_form_residual = 0.0;          // ||curl-curl form residual|| / ||E_s||
  double reduced_form_residual = 0.0;           // ||apply_A(E_s) - F|| / ||F||
  WeightedNorms solution_norms;
  double rhs_dual_norm_proxy = 0.0;  // ||((-Delta)^s + 1)^{-1/2} F||
  double rhs_l2_delta = 0.0;
  bool converged = false;
  bool incident_degenerate = false;
  double eps_min = 1.0, eps_max = 1.0;
  std::vector<std::string> warnings;
};

struct ScatterSolution {
  VectorField3 e_s;
  VectorField3 e_i;
  VectorField3 h;
  SolveReport report;
};

class SolveFailure : public std::runtime_error {
 public:
  SolveFailure(const std::string& what, SolveReport report, VectorField3 last)
      : std::runtime_error(what), report_(std::move(report)), last_(std::move(last)) {}
  const SolveReport& report() const { return report_; }
  const VectorField3& last_iterate() const { return last_; }

 private:
  SolveReport report_;
  VectorField3 last_;
};

/// GMRES on apply_A with right-hand side rhs_F. Requires 1/2 <= s < 1.
ScatterSolution solve_scattering(const ScatterProblem& p);

/// GMRES on the problem's operator with an arbitrary right-hand side, from a
/// zero start. s = 1 is accepted here (classical operator).
GmresResult solve_rhs(const ScatterProblem& p, const VectorField3& F);

/// Same pipeline with every multiplier at s = 1 (kappa = k).
ScatterSolution classical_reference_solve(const ScatterProblem& p);

struct UniquenessResult {
  bool unique = false;
  double max_ratio = 0.0;  // max ||u||_{H^s_delta} / ||u_0||_{H^s_delta} over the starts
  std::vector<double> ratios;
};

/// Solves A u = 0 from `starts` random initial guesses.
UniquenessResult homogeneous_uniqueness_check(const ScatterProblem& p, int starts, std::uint64_t seed);

struct ManufacturedResult {
  double relative_error = 0.0;
  GmresResult solve;
};

/// Picks a random band-limited u*, sets F = apply_A(u*) and solves.
ManufacturedResult manufactured_solve(const ScatterProblem& p, std::uint64_t seed, int band);

/// Random complex field with Fourier support |signed index| <= band per axis.
VectorField3 random_band_limited(const Grid3& g, int band, std::uint64_t seed);

}  // namespace fracmax::solver
