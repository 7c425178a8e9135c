#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hnls/config.hpp"
#include "hnls/norms.hpp"

namespace hnls {

enum class RunMode { Linear, Nonlinear, Reduced, Oracle, Compare };

/// Parses linear, nonlinear, reduced, oracle or compare (ConfigInvalid otherwise).
RunMode parse_mode(const std::string& name);
std::string mode_name(RunMode mode);

/// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitSolverError = 3;

/// Norm table of the data and, when given, of a solution field.
std::vector<NormRow> norm_table(const ProblemData& data, double s, const Field* field);

/// Loads a scenario, runs the requested mode and writes field.csv, norms.csv
/// and diagnostics.json into out_dir (the configured directory when empty).
/// Returns the exit status; messages go to `log`.
int run_scenario(const std::string& config_path, RunMode mode, const std::string& out_dir, int refine_level,
                 std::ostream& log);

/// Writes the norm table of a scenario's data into out_dir/norms.csv.
int run_norms(const std::string& config_path, const std::string& out_dir, std::ostream& log);

/// Runs a verify suite and writes its JSON report to out_dir/verify_<suite>.json
/// (or to `log` when out_dir is empty). Exit 0 iff every property passes.
int run_verify_command(const std::string& suite, std::uint64_t seed, const std::string& out_dir, std::ostream& log);

}  // namespace hnls
