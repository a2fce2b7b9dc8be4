#include "fracmax/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "fracmax/config.hpp"
#include "fracmax/helmholtz.hpp"
#include "fracmax/io.hpp"
#include "fracmax/report.hpp"
#include "fracmax/solver.hpp"
#include "fracmax/spectral.hpp"
#include "fracmax/validation.hpp"

namespace fracmax::cli {
namespace {

namespace fs = std::filesystem;
using report::fmt;
using report::Report;

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw io::IoError("cannot create output directory " + dir);
}

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

std::string vec_str(const Vec3& v) { return fmt(v[0]) + " " + fmt(v[1]) + " " + fmt(v[2]); }

const char* precond_name(solver::Precond p) { return p == solver::Precond::none ? "none" : "shifted_fraclap"; }

void describe_config(Report& r, const config::ScatterConfig& c) {
  const auto& p = c.problem;
  r.add("s", p.fp.s);
  r.add("k", p.fp.k);
  r.add("delta", p.fp.delta);
  r.add("kappa", c.snapping.kappa);
  r.add("grid.n", p.grid.n());
  r.add("grid.L_requested", c.requested_length);
  r.add("grid.L", p.grid.length());
  r.add("snap", c.snap);
  r.add("snapped", c.snapping.snapped);
  r.add("lattice_index", c.snapping.lattice_index);
  r.add("permittivity.amplitude", p.eps.amplitude);
  r.add("permittivity.width", p.eps.width);
  r.add("permittivity.radius", p.eps.radius);
  r.add("permittivity.center", vec_str(p.eps.center));
  r.add("incident.p", vec_str(p.incident.p));
  r.add("incident.d", vec_str(p.incident.d));
  r.add("solver.tol", p.controls.tol);
  r.add("solver.max_iter", p.controls.max_iter);
  r.add("solver.restart", p.controls.restart);
  r.add("solver.precond", precond_name(p.controls.precond));
  r.add("seed", static_cast<long long>(c.seed));
}

void describe_solve(Report& r, const solver::SolveReport& s) {
  r.add("converged", s.converged);
  r.add("iterations", s.iterations);
  r.add("final_relative_residual", s.final_relative_residual);
  r.add("reduced_form_residual", s.reduced_form_residual);
  r.add("curlcurl_form_residual", s.curlcurl_form_residual);
  r.add("divergence_constraint_residual", s.divergence_constraint_residual);
  r.add("norm.l2_delta", s.solution_norms.l2_delta);
  r.add("norm.hs_delta", s.solution_norms.hs_delta);
  r.add("rhs.l2_delta", s.rhs_l2_delta);
  r.add("rhs.dual_norm_proxy", s.rhs_dual_norm_proxy);
  r.add("eps_min", s.eps_min);
  r.add("eps_max", s.eps_max);
  r.add("incident_degenerate", s.incident_degenerate);
  for (std::size_t i = 0; i < s.warnings.size(); ++i) r.add("warning." + std::to_string(i), s.warnings[i]);
}

struct RunOutcome {
  int status = kExitOk;
  solver::SolveReport report;
  std::optional<solver::ScatterSolution> solution;
  std::string error;
};

// Solves one configuration and writes its files into dir. Errors are
// returned, not thrown, so sweeps can continue.
RunOutcome solve_and_write(const config::ScatterConfig& c, const std::string& dir) {
  RunOutcome out;
  Report rep("fracmax solve");
  describe_config(rep, c);
  try {
    ensure_dir(dir);
    try {
      out.solution = solver::solve_scattering(c.problem);
      out.report = out.solution->report;
    } catch (const solver::SolveFailure& f) {
      out.status = kExitNotConverged;
      out.report = f.report();
      out.error = f.what();
    } catch (const std::invalid_argument& e) {
      out.status = kExitUsage;
      out.error = e.what();
    } catch (const std::runtime_error& e) {
      out.status = kExitNotConverged;
      out.error = e.what();
    }
    if (out.status == kExitUsage) return out;
    describe_solve(rep, out.report);
    if (!out.error.empty()) rep.add("error", out.error);

    if (out.solution) {
      const auto& sol = *out.solution;
      io::write_field(join(dir, "e_s.f3d"), sol.e_s);
      io::write_field(join(dir, "e_i.f3d"), sol.e_i);
      io::write_field(join(dir, "h.f3d"), sol.h);
      io::write_slice_csv(join(dir, "slice_es.csv"), sol.e_s, c.problem.grid.n() / 2);
      if (c.check_uniqueness) {
        const auto u = solver::homogeneous_uniqueness_check(c.problem, c.uniqueness_starts, c.seed);
        rep.add("uniqueness.starts", c.uniqueness_starts);
        rep.add("uniqueness.unique", u.unique);
        rep.add("uniqueness.max_ratio", u.max_ratio);
        if (!u.unique) rep.add("uniqueness.note", "near-resonant configuration: homogeneous problem has a nonzero solution");
      }
      if (c.manufactured_band) {
        const auto m = solver::manufactured_solve(c.problem, c.seed, *c.manufactured_band);
        rep.add("manufactured.band", *c.manufactured_band);
        rep.add("manufactured.converged", m.solve.converged);
        rep.add("manufactured.iterations", m.solve.iterations);
        rep.add("manufactured.relative_error", m.relative_error);
      }
    }
    rep.series("residual_history", out.report.residual_history);
    rep.write(join(dir, "report.txt"));
  } catch (const io::IoError& e) {
    out.status = kExitIo;
    out.error = e.what();
  }
  return out;
}

void apply_seed(config::ScatterConfig& c, std::optional<std::uint64_t> seed) {
  if (seed) c.seed = *seed;
}

std::string default_out(const config::ScatterConfig& c, const std::string& out_dir) {
  if (!out_dir.empty()) return out_dir;
  return c.output_dir.empty() ? std::string("fracmax_out") : c.output_dir;
}

// Runs body and maps the library's exception types to exit codes.
template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const config::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const io::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const io::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace

int cmd_solve(const std::string& config_path, const std::string& out_dir, std::optional<std::uint64_t> seed) {
  return guarded([&] {
    auto c = config::load_config(config_path);
    apply_seed(c, seed);
    const std::string dir = default_out(c, out_dir);
    const auto res = solve_and_write(c, dir);
    if (res.status != kExitOk) {
      std::cerr << "error: " << res.error << "\n";
      return res.status;
    }
    const auto& r = res.report;
    std::cout << "converged in " << r.iterations << " iterations, relative residual "
              << fmt(r.final_relative_residual) << "; output in " << dir << "\n";
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    return kExitOk;
  });
}

int cmd_validate(const std::string& suite, int n, std::uint64_t seed, const std::string& out_dir) {
  return guarded([&] {
    std::vector<std::string> suites;
    if (suite == "all") {
      suites = validation::suite_names();
    } else if (std::find(validation::suite_names().begin(), validation::suite_names().end(), suite) !=
               validation::suite_names().end()) {
      suites = {suite};
    } else {
      throw std::invalid_argument("unknown suite '" + suite + "'");
    }
    std::vector<validation::SuiteResult> results;
    for (const auto& name : suites) {
      // "all" runs the 6-D transform at its size cap.
      const int m = (suite == "all" && name == "fourier-lemma") ? std::min(n, 8) : n;
      results.push_back(validation::run_suite(name, m, seed));
    }
    const std::string table = validation::format_table(results);
    std::cout << table;
    if (!out_dir.empty()) {
      ensure_dir(out_dir);
      std::ofstream f(join(out_dir, "validate.txt"));
      if (!(f << table)) throw io::IoError("cannot write " + join(out_dir, "validate.txt"));
    }
    const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed(); });
    return ok ? kExitOk : kExitUsage;
  });
}

int cmd_decompose(const std::string& field_path, double s, const std::string& out_dir) {
  return guarded([&] {
    const auto file = io::read_field(field_path);
    if (file.rank != 3) {
      throw std::invalid_argument(field_path + ": decompose needs a rank-3 field, got rank " +
                                  std::to_string(file.rank));
    }
    const auto& v = *file.vector;
    const auto e = helmholtz::pi_inverse(v, s);
    const auto target = v - null_mode_part(v);
    const double tn = l2_norm(target);
    const double err = tn > 0.0 ? l2_norm(helmholtz::pi(e) - target) / tn : l2_norm(helmholtz::pi(e));

    const std::string dir = out_dir.empty() ? std::string("fracmax_out") : out_dir;
    ensure_dir(dir);
    io::write_field(join(dir, "phi.f3d"), e.phi);
    io::write_field(join(dir, "a.f3d"), e.a);
    Report rep("fracmax decompose");
    rep.add("s", s);
    rep.add("grid.n", v.grid().n());
    rep.add("grid.L", v.grid().length());
    rep.add("norm.phi", l2_norm(e.phi));
    rep.add("norm.a", l2_norm(e.a));
    rep.add("null_mode_norm", l2_norm(null_mode_part(v)));
    rep.add("gauge_defect", helmholtz::gauge_defect(e));
    rep.add("reconstruction_error", err);
    rep.write(join(dir, "decompose.txt"));
    std::cout << "reconstruction error " << fmt(err) << "; output in " << dir << "\n";
    return kExitOk;
  });
}

int cmd_sweep(const std::string& config_path, const std::string& param, const std::vector<double>& values,
              const std::string& out_dir, std::optional<std::uint64_t> seed) {
  return guarded([&] {
    if (param != "s" && param != "k" && param != "amplitude") {
      throw std::invalid_argument("--param must be s, k or amplitude");
    }
    if (values.empty()) throw std::invalid_argument("--values is empty");
    const bool up = values.size() < 2 || values[1] > values[0];
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (up ? !(values[i] > values[i - 1]) : !(values[i] < values[i - 1])) {
        throw std::invalid_argument("--values must be strictly monotone");
      }
    }
    auto base = config::load_config(config_path);
    apply_seed(base, seed);
    std::vector<config::ScatterConfig> runs;
    for (double v : values) {
      if (param == "s" && !(v >= 0.5 && v < 1.0)) throw std::invalid_argument("s = " + fmt(v) + " outside [0.5, 1)");
      if (param == "k" && !(v > 0.0)) throw std::invalid_argument("k = " + fmt(v) + " must be positive");
      auto c = base;
      if (param == "s") c.problem.fp.s = v;
      if (param == "k") c.problem.fp.k = v;
      if (param == "amplitude") c.problem.eps.amplitude = v;
      try {
        c.problem.fp.validate();
        config::resnap(c);
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(param + " = " + fmt(v) + ": " + e.what());
      }
      runs.push_back(std::move(c));
    }
    const std::string dir = default_out(base, out_dir);
    ensure_dir(dir);

    struct Row {
      RunOutcome run;
      double gap = -1.0;  // < 0: not computed
    };
    auto work = [&](std::size_t i) {
      Row row;
      row.run = solve_and_write(runs[i], join(dir, "run_" + std::to_string(i)));
      if (param == "s" && row.run.solution) {
        try {
          const auto ref = solver::classical_reference_solve(runs[i].problem);
          row.gap = l2_norm(row.run.solution->e_s - ref.e_s) / l2_norm(ref.e_s);
        } catch (const std::runtime_error&) {
          row.gap = -1.0;
        }
      }
      row.run.solution.reset();
      return row;
    };
    // Independent solves; at most one per hardware thread in flight.
    const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
    std::vector<Row> rows(runs.size());
    for (std::size_t start = 0; start < runs.size(); start += width) {
      std::vector<std::future<Row>> batch;
      for (std::size_t i = start; i < std::min(runs.size(), start + width); ++i) {
        batch.push_back(std::async(std::launch::async, work, i));
      }
      for (std::size_t j = 0; j < batch.size(); ++j) rows[start + j] = batch[j].get();
    }

    const std::string csv_path = join(dir, "sweep.csv");
    std::ofstream csv(csv_path);
    csv << "value,status,iterations,final_relative_residual,reduced_form_residual,curlcurl_form_residual,"
           "divergence_constraint_residual,l2_delta,hs_delta,gap_to_classical\n";
    int status = kExitOk;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i].run;
      const auto& rep = r.report;
      if (r.status != kExitOk) {
        status = r.status == kExitIo ? kExitIo : std::max(status, kExitNotConverged);
        std::cerr << "run " << i << " (" << param << " = " << fmt(values[i]) << ") failed: " << r.error << "\n";
      }
      csv << fmt(values[i]) << ',' << (r.status == kExitOk ? "ok" : "failed") << ',' << rep.iterations << ','
          << fmt(rep.final_relative_residual) << ',' << fmt(rep.reduced_form_residual) << ','
          << fmt(rep.curlcurl_form_residual) << ',' << fmt(rep.divergence_constraint_residual) << ','
          << fmt(rep.solution_norms.l2_delta) << ',' << fmt(rep.solution_norms.hs_delta) << ','
          << (rows[i].gap >= 0.0 ? fmt(rows[i].gap) : std::string()) << '\n';
    }
    if (!csv) throw io::IoError("cannot write " + csv_path);
    std::cout << runs.size() << " runs; summary in " << csv_path << "\n";
    return status;
  });
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Fractional Maxwell scattering solver"};
  app.require_subcommand(1);

  std::string config_path, out_dir, suite = "all", param, field_path;
  int n = 16;
  std::uint64_t seed_value = 0;
  double s = 0.75;
  std::vector<double> values;

  auto* solve = app.add_subcommand("solve", "Solve one scattering problem");
  solve->add_option("--config", config_path, "JSON config file")->required();
  solve->add_option("--out", out_dir, "Output directory");
  auto* solve_seed = solve->add_option("--seed", seed_value, "Override the config seed");

  auto* validate = app.add_subcommand("validate", "Run invariant suites");
  validate->add_option("--suite", suite, "Suite name or 'all'");
  validate->add_option("--n", n, "Grid size");
  validate->add_option("--seed", seed_value, "Random seed");
  validate->add_option("--out", out_dir, "Also write the table to this directory");

  auto* decompose = app.add_subcommand("decompose", "Fractional Helmholtz potentials of a stored field");
  decompose->add_option("field", field_path, "Rank-3 field file")->required();
  decompose->add_option("--s", s, "Fractional order");
  decompose->add_option("--out", out_dir, "Output directory");

  auto* sweep = app.add_subcommand("sweep", "One solve per parameter value");
  sweep->add_option("--config", config_path, "JSON config file")->required();
  sweep->add_option("--param", param, "s, k or amplitude")->required();
  sweep->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');
  sweep->add_option("--out", out_dir, "Output directory");
  auto* sweep_seed = sweep->add_option("--seed", seed_value, "Override the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (solve->parsed()) {
    return cmd_solve(config_path, out_dir, solve_seed->count() ? std::optional(seed_value) : std::nullopt);
  }
  if (validate->parsed()) return cmd_validate(suite, n, seed_value, out_dir);
  if (decompose->parsed()) return cmd_decompose(field_path, s, out_dir);
  return cmd_sweep(config_path, param, values, out_dir, sweep_seed->count() ? std::optional(seed_value) : std::nullopt);
}

}  // namespace fracmax::cli
