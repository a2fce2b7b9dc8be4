#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fracmax::validation {

struct Check {
  enum class Kind { at_most, at_least, greater_than, flag, info };

  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  Kind kind = Kind::at_most;
  std::string note;

  bool pass() const;
  static Check at_most(std::string name, double measured, double tol, std::string note = {});
  static Check at_least(std::string name, double measured, double bound, std::string note = {});
  static Check greater_than(std::string name, double measured, double bound, std::string note = {});
  static Check flag(std::string name, bool ok, std::string note = {});
  static Check info(std::string name, double measured, std::string note = {});
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  bool passed() const;
};

/// Spectral algebra at every order in `orders`: composition, Riesz round trip,
/// curl grad, div curl, curl curl = grad div - Laplacian.
std::vector<Check> spectral_checks(int n, const std::vector<double>& orders, std::uint64_t seed);
/// Quadrature projections of the adjoint fields against the spectral
/// operators, the spectral identities of the projections, and the adjoint
/// relation of the projected curl.
std::vector<Check> projection_checks(int n, double s);
/// Nonlocal divergence of the adjoint fields.
std::vector<Check> nonlocal_div_checks(int n, double s);
/// Lattice Fourier transform of the two-point curl; n <= 8.
std::vector<Check> fourier_checks(int n, double s, std::uint64_t seed);
/// pi / pi_inverse round trips and gauge preservation.
std::vector<Check> helmholtz_checks(int n, std::uint64_t seed);
/// ||pi_dstar(f, s) - grad f|| for s -> 1.
std::vector<Check> limit_checks(int n);
/// Vacuum plane-wave identity and incident amplitude.
std::vector<Check> vacuum_checks(int n);
std::vector<Check> coercivity_checks(int n, std::uint64_t seed);
/// Operator identities of the scattering problem plus a manufactured solve.
std::vector<Check> maxwell_checks(int n, std::uint64_t seed);

const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument for an unknown suite or an n outside its limits.
SuiteResult run_suite(const std::string& suite, int n, std::uint64_t seed);

std::string format_table(const std::vector<SuiteResult>& results);

}  // namespace fracmax::validation
