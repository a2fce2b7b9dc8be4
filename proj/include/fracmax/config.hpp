#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "fracmax/maxwell.hpp"
#include "fracmax/solver.hpp"

namespace fracmax::config {

/// Malformed or invalid configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parsed solve configuration. s, k and grid.{n, L} have no defaults.
///
///   {
///     "s": 0.75, "k": 1.0, "delta": 1.0,
///     "grid": {"n": 32, "L": 6.283185307179586},
///     "permittivity": {"kind": "gaussian_bump", "amplitude": 1.0, "width": 0.6,
///                      "radius": 3.0, "center": [x, y, z]},
///     "incident": {"p": [0, 0, 1], "d": [1, 0, 0]},
///     "solver": {"tol": 1e-8, "max_iter": 500, "restart": 50,
///                "precond": "shifted_fraclap"},
///     "snap": true, "seed": 1, "check_uniqueness": false,
///     "manufactured": {"band": 4}, "output_dir": "out"
///   }
///
/// A missing center means the box center (after snapping).
struct ScatterConfig {
  solver::ScatterProblem problem;  // grid already snapped
  maxwell::Snapping snapping;
  double requested_length = 0.0;
  bool snap = true;
  bool center_given = false;
  std::uint64_t seed = 0;
  bool check_uniqueness = false;
  int uniqueness_starts = 5;
  std::optional<int> manufactured_band;
  std::string output_dir;
};

ScatterConfig parse_config(const std::string& text);
/// Throws io::IoError if the file cannot be read, ConfigError otherwise.
ScatterConfig load_config(const std::string& path);

/// Re-derives grid and snapping after a field of the config changed.
void resnap(ScatterConfig& c);

}  // namespace fracmax::config
