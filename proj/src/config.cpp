#include "fracmax/config.hpp"

#include <fstream>
#include <sstream>

#include "fracmax/io.hpp"
#include "json.hpp"

namespace fracmax::config {
namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError("missing required field '" + where + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& name) {
  if (!j.is_number()) throw ConfigError("field '" + name + "' must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& name) {
  if (!j.is_number_integer()) throw ConfigError("field '" + name + "' must be an integer");
  return j.get<int>();
}

bool boolean(const json& j, const std::string& name) {
  if (!j.is_boolean()) throw ConfigError("field '" + name + "' must be true or false");
  return j.get<bool>();
}

Vec3 vec3(const json& j, const std::string& name) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("field '" + name + "' must be an array of 3 numbers");
  Vec3 v;
  for (int a = 0; a < 3; ++a) v[a] = number(j[a], name);
  return v;
}

double optional_number(const json& j, const char* key, double fallback, const std::string& where) {
  return j.contains(key) ? number(j.at(key), where + key) : fallback;
}

}  // namespace

void resnap(ScatterConfig& c) {
  const int n = c.problem.grid.n();
  if (c.snap) {
    c.snapping = maxwell::snap_to_lattice(c.problem.fp, c.problem.incident, n, c.requested_length);
  } else {
    c.snapping = maxwell::Snapping{c.requested_length, c.problem.fp.kappa(), 0, false,
                                   "lattice snapping disabled; kappa d may be off the lattice"};
  }
  c.problem.grid = Grid3(n, c.snapping.length);
  if (!c.center_given) c.problem.eps.center = c.problem.grid.center();
  c.problem.eps.validate(c.problem.grid);
}

namespace {

ScatterConfig parse_impl(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  ScatterConfig c;
  auto& p = c.problem;
  p.fp.s = number(require(j, "s", ""), "s");
  p.fp.k = number(require(j, "k", ""), "k");
  p.fp.delta = optional_number(j, "delta", 1.0, "");

  const json& grid = require(j, "grid", "");
  const int n = integer(require(grid, "n", "grid."), "grid.n");
  c.requested_length = number(require(grid, "L", "grid."), "grid.L");

  if (j.contains("permittivity")) {
    const json& e = j.at("permittivity");
    if (e.contains("kind") && e.at("kind") != "gaussian_bump") {
      throw ConfigError("field 'permittivity.kind' must be \"gaussian_bump\"");
    }
    p.eps.amplitude = number(require(e, "amplitude", "permittivity."), "permittivity.amplitude");
    p.eps.width = optional_number(e, "width", p.eps.width, "permittivity.");
    p.eps.radius = optional_number(e, "radius", p.eps.radius, "permittivity.");
    if (e.contains("center")) {
      p.eps.center = vec3(e.at("center"), "permittivity.center");
      c.center_given = true;
    }
  }
  if (j.contains("incident")) {
    const json& inc = j.at("incident");
    p.incident.p = vec3(require(inc, "p", "incident."), "incident.p");
    p.incident.d = vec3(require(inc, "d", "incident."), "incident.d");
  }
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    p.controls.tol = optional_number(s, "tol", p.controls.tol, "solver.");
    if (s.contains("max_iter")) p.controls.max_iter = integer(s.at("max_iter"), "solver.max_iter");
    if (s.contains("restart")) p.controls.restart = integer(s.at("restart"), "solver.restart");
    if (s.contains("precond")) {
      const auto name = s.at("precond").get<std::string>();
      if (name == "none") {
        p.controls.precond = solver::Precond::none;
      } else if (name == "shifted_fraclap") {
        p.controls.precond = solver::Precond::shifted_fraclap;
      } else {
        throw ConfigError("field 'solver.precond' must be \"none\" or \"shifted_fraclap\"");
      }
    }
  }
  if (j.contains("snap")) c.snap = boolean(j.at("snap"), "snap");
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ConfigError("field 'seed' must be a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("check_uniqueness")) c.check_uniqueness = boolean(j.at("check_uniqueness"), "check_uniqueness");
  if (j.contains("manufactured")) {
    const json& m = j.at("manufactured");
    c.manufactured_band = m.contains("band") ? integer(m.at("band"), "manufactured.band") : 4;
  }
  if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();

  try {
    p.fp.validate();
    p.controls.validate();
    p.grid = Grid3(n, c.requested_length);
    resnap(c);
    if (c.manufactured_band && (*c.manufactured_band < 1 || *c.manufactured_band >= n / 2)) {
      throw std::invalid_argument("manufactured.band must lie in [1, n/2)");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

}  // namespace

ScatterConfig parse_config(const std::string& text) {
  try {
    return parse_impl(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config has a field of the wrong type: ") + e.what());
  }
}

ScatterConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io::IoError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace fracmax::config
