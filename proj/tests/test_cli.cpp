#include <catch_amalgamated.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "fracmax/cli.hpp"
#include "fracmax/helmholtz.hpp"
#include "fracmax/io.hpp"
#include "fracmax/spectral.hpp"
#include "test_support.hpp"

using namespace fracmax;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

int fracmax_main(std::vector<std::string> args) {
  args.insert(args.begin(), "fracmax");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> report_keys(const std::string& path) {
  std::map<std::string, std::string> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) out[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return out;
}

std::string write_config(const std::string& dir, const std::string& name, const std::string& text) {
  const auto path = dir + "/" + name;
  std::ofstream(path) << text;
  return path;
}

// Off-lattice bump problem in the 2 pi box (k^2 = 1.34, s = 0.75).
const char* kBump = R"({"s": 0.75, "k": 1.1575836902790225, "grid": {"n": 16, "L": 6.283185307179586},
  "permittivity": {"amplitude": 1.0, "width": 0.6, "radius": 3.0}, "snap": false, "seed": 7,
  "solver": {"tol": 1e-10}, "check_uniqueness": true, "manufactured": {"band": 4}})";

}  // namespace

TEST_CASE("end-to-end smoke: solve, decompose, validate", "[cli][smoke]") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto dir = scratch_dir("cli_smoke");
  const auto cfg = write_config(dir, "c.json", kBump);

  REQUIRE(fracmax_main({"solve", "--config", cfg, "--out", dir + "/run"}) == cli::kExitOk);
  for (const char* f : {"e_s.f3d", "e_i.f3d", "h.f3d", "slice_es.csv", "report.txt"}) {
    CHECK(fs::exists(dir + "/run/" + f));
  }
  const auto keys = report_keys(dir + "/run/report.txt");
  CHECK(keys.at("converged") == "true");
  CHECK(keys.at("seed") == "7");
  CHECK(std::stod(keys.at("manufactured.relative_error")) <= 1e-6);
  CHECK(keys.at("uniqueness.unique") == "true");
  CHECK(slurp(dir + "/run/report.txt").find("residual_history:") != std::string::npos);

  REQUIRE(fracmax_main({"decompose", dir + "/run/e_s.f3d", "--s", "0.75", "--out", dir + "/dec"}) == cli::kExitOk);
  CHECK(std::stod(report_keys(dir + "/dec/decompose.txt").at("reconstruction_error")) <= 1e-12);
  CHECK(io::read_field(dir + "/dec/phi.f3d").rank == 1);
  CHECK(io::read_field(dir + "/dec/a.f3d").rank == 3);

  CHECK(fracmax_main({"validate", "--suite", "spectral", "--n", "16"}) == cli::kExitOk);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 60.0);
}

TEST_CASE("reports are deterministic under a fixed seed", "[cli][determinism]") {
  const auto dir = scratch_dir("cli_determinism");
  const auto cfg = write_config(dir, "c.json", kBump);
  REQUIRE(fracmax_main({"solve", "--config", cfg, "--out", dir + "/a"}) == 0);
  REQUIRE(fracmax_main({"solve", "--config", cfg, "--out", dir + "/b"}) == 0);
  for (const char* f : {"report.txt", "e_s.f3d", "h.f3d", "slice_es.csv"}) {
    CHECK(slurp(dir + "/a/" + f) == slurp(dir + "/b/" + f));
  }
  // --seed overrides the config seed and is recorded.
  REQUIRE(fracmax_main({"solve", "--config", cfg, "--out", dir + "/c", "--seed", "8"}) == 0);
  const auto k = report_keys(dir + "/c/report.txt");
  CHECK(k.at("seed") == "8");
  CHECK(k.at("manufactured.relative_error") != report_keys(dir + "/a/report.txt").at("manufactured.relative_error"));
}

TEST_CASE("solve exit codes", "[cli][solve]") {
  const auto dir = scratch_dir("cli_solve");
  const auto vac = write_config(dir, "vac.json", R"({"s": 0.5, "k": 1.0, "grid": {"n": 8, "L": 6.28}})");
  REQUIRE(fracmax_main({"solve", "--config", vac, "--out", dir + "/vac"}) == cli::kExitOk);
  const auto e = io::read_field(dir + "/vac/e_s.f3d");
  CHECK(max_abs(*e.vector) == 0.0);

  const auto missing = write_config(dir, "missing.json", R"({"k": 1.0, "grid": {"n": 8, "L": 6.28}})");
  CHECK(fracmax_main({"solve", "--config", missing, "--out", dir + "/m"}) == cli::kExitUsage);
  CHECK(fracmax_main({"solve", "--config", dir + "/nope.json"}) == cli::kExitIo);
  CHECK(fracmax_main({"solve"}) == cli::kExitUsage);
  CHECK(fracmax_main({"frobnicate"}) == cli::kExitUsage);

  const auto stuck = write_config(dir, "stuck.json", R"({"s": 0.75, "k": 1.1575836902790225,
    "grid": {"n": 8, "L": 6.283185307179586}, "permittivity": {"amplitude": 1.0, "width": 0.6, "radius": 3.0},
    "snap": false, "solver": {"max_iter": 2, "restart": 2, "tol": 1e-12}})");
  CHECK(fracmax_main({"solve", "--config", stuck, "--out", dir + "/stuck"}) == cli::kExitNotConverged);
  const auto k = report_keys(dir + "/stuck/report.txt");
  CHECK(k.at("converged") == "false");
  CHECK(k.at("iterations") == "2");

  // Output directory path runs through a regular file.
  std::ofstream(dir + "/blocker") << "x";
  CHECK(fracmax_main({"solve", "--config", vac, "--out", dir + "/blocker/out"}) == cli::kExitIo);
}

TEST_CASE("decompose", "[cli][decompose]") {
  const auto dir = scratch_dir("cli_decompose");
  Grid3 g(8, 2.0 * kPi);
  const auto f = remove_mean(band_limited_scalar(g, 3, 4));
  io::write_field(dir + "/grad.f3d", grad(f));
  REQUIRE(fracmax_main({"decompose", dir + "/grad.f3d", "--s", "0.5", "--out", dir + "/g"}) == 0);
  const auto a = io::read_field(dir + "/g/a.f3d");
  CHECK(max_abs(*a.vector) <= 1e-12 * max_abs(grad(f)));

  io::write_field(dir + "/rand.f3d", random_vector(g, 5));
  REQUIRE(fracmax_main({"decompose", dir + "/rand.f3d", "--out", dir + "/r"}) == 0);
  CHECK(std::stod(report_keys(dir + "/r/decompose.txt").at("reconstruction_error")) <= 1e-12);

  io::write_field(dir + "/scalar.f3d", f);
  CHECK(fracmax_main({"decompose", dir + "/scalar.f3d", "--out", dir + "/s"}) == cli::kExitUsage);

  std::string bytes = slurp(dir + "/rand.f3d");
  bytes[1] = 'Z';
  std::ofstream(dir + "/bad.f3d", std::ios::binary) << bytes;
  CHECK(fracmax_main({"decompose", dir + "/bad.f3d", "--out", dir + "/b"}) == cli::kExitUsage);
  CHECK(fracmax_main({"decompose", dir + "/rand.f3d", "--s", "1.5", "--out", dir + "/b"}) == cli::kExitUsage);
}

TEST_CASE("validate", "[cli][validate]") {
  const auto dir = scratch_dir("cli_validate");
  CHECK(fracmax_main({"validate", "--suite", "spectral", "--n", "8", "--out", dir}) == cli::kExitOk);
  CHECK(slurp(dir + "/validate.txt").find("== spectral [PASS]") != std::string::npos);
  CHECK(fracmax_main({"validate", "--suite", "helmholtz", "--n", "16"}) == cli::kExitOk);
  CHECK(fracmax_main({"validate", "--suite", "nonsense"}) == cli::kExitUsage);
  CHECK(fracmax_main({"validate", "--suite", "fourier-lemma", "--n", "16"}) == cli::kExitUsage);
  CHECK(fracmax_main({"validate", "--suite", "spectral", "--n", "7"}) == cli::kExitUsage);
}

TEST_CASE("sweep", "[cli][sweep]") {
  const auto dir = scratch_dir("cli_sweep");
  const auto cfg = write_config(dir, "c.json", kBump);
  REQUIRE(fracmax_main({"solve", "--config", cfg, "--out", dir + "/solo"}) == 0);
  REQUIRE(fracmax_main({"sweep", "--config", cfg, "--param", "s", "--values", "0.75", "--out", dir + "/one"}) == 0);
  for (const char* f : {"report.txt", "e_s.f3d", "e_i.f3d", "h.f3d", "slice_es.csv"}) {
    CHECK(slurp(dir + "/one/run_0/" + f) == slurp(dir + "/solo/" + f));
  }

  REQUIRE(fracmax_main({"sweep", "--config", cfg, "--param", "amplitude", "--values", "0.25,0.5", "--out",
                        dir + "/amp"}) == 0);
  std::ifstream csv(dir + "/amp/sweep.csv");
  std::string header, row;
  std::getline(csv, header);
  CHECK(header.rfind("value,status,iterations,", 0) == 0);
  int rows = 0;
  while (std::getline(csv, row)) {
    ++rows;
    CHECK(row.find(",ok,") != std::string::npos);
    CHECK(row.back() == ',');  // no classical gap unless param = s
  }
  CHECK(rows == 2);

  CHECK(fracmax_main({"sweep", "--config", cfg, "--param", "s", "--values", "0.9,1.0", "--out", dir + "/x"}) == 1);
  CHECK(fracmax_main({"sweep", "--config", cfg, "--param", "s", "--values", "0.4,0.6", "--out", dir + "/x"}) == 1);
  CHECK(fracmax_main({"sweep", "--config", cfg, "--param", "k", "--values", "1,1", "--out", dir + "/x"}) == 1);
  CHECK(fracmax_main({"sweep", "--config", cfg, "--param", "k", "--values", "1,2,1.5", "--out", dir + "/x"}) == 1);
  CHECK(fracmax_main({"sweep", "--config", cfg, "--param", "delta", "--values", "1", "--out", dir + "/x"}) == 1);
  CHECK(fracmax_main({"sweep", "--config", cfg, "--param", "amplitude", "--values", "-3", "--out", dir + "/x"}) ==
        1);

  // One failing run is recorded and the sweep finishes with exit 2.
  const auto stuck = write_config(dir, "stuck.json", R"({"s": 0.75, "k": 1.1575836902790225,
    "grid": {"n": 8, "L": 6.283185307179586}, "permittivity": {"amplitude": 0.0, "width": 0.6, "radius": 3.0},
    "snap": false, "solver": {"max_iter": 3, "restart": 3, "tol": 1e-12}})");
  CHECK(fracmax_main({"sweep", "--config", stuck, "--param", "amplitude", "--values", "0,1", "--out",
                      dir + "/fail"}) == cli::kExitNotConverged);
  const auto text = slurp(dir + "/fail/sweep.csv");
  CHECK(text.find("0,ok,") != std::string::npos);
  CHECK(text.find("1,failed,") != std::string::npos);
  CHECK(fs::exists(dir + "/fail/run_1/report.txt"));
}
