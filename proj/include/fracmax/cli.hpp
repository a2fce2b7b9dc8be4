#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fracmax::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;          // bad arguments, config or input file contents
inline constexpr int kExitNotConverged = 2;   // report is still written
inline constexpr int kExitIo = 3;

/// Entry point of `fracmax solve|validate|decompose|sweep`.
int run(int argc, const char* const* argv);

/// Writes e_s.f3d, e_i.f3d, h.f3d, slice_es.csv and report.txt into out_dir
/// (default: the config's output_dir, else "fracmax_out"). `seed` overrides
/// the config seed.
int cmd_solve(const std::string& config_path, const std::string& out_dir, std::optional<std::uint64_t> seed);

/// suite is one of validation::suite_names() or "all". The table goes to
/// stdout and, when out_dir is non-empty, to out_dir/validate.txt.
int cmd_validate(const std::string& suite, int n, std::uint64_t seed, const std::string& out_dir);

/// Writes phi.f3d, a.f3d and decompose.txt for a rank-3 field file.
int cmd_decompose(const std::string& field_path, double s, const std::string& out_dir);

/// One solve per value (param is s, k or amplitude). Each run writes the
/// cmd_solve files into out_dir/run_<i>; out_dir/sweep.csv aggregates.
int cmd_sweep(const std::string& config_path, const std::string& param, const std::vector<double>& values,
              const std::string& out_dir, std::optional<std::uint64_t> seed);

}  // namespace fracmax::cli
