#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nmps/linesearch.hpp"
#include "nmps/solver.hpp"

namespace nmps::cli {

enum class Command { List, Solve, Bench, Profile };

struct CliConfig {
  Command command = Command::List;
  SolverConfig solver;
  std::string lambda_rule = "uniform";

  // solve
  std::string problem;
  std::optional<std::string> trace_path;
  std::optional<std::string> chi_report_path;
  double lipschitz = 0.0;
  double grad_bound = 0.0;

  // bench
  std::vector<std::string> problems;
  std::vector<StrategyKind> strategies;
  std::string out_path;  // bench results, profile curves
  std::optional<std::string> profile_out;
  std::optional<std::string> unsolved_out;

  // bench, profile
  std::vector<double> taus;
  std::optional<std::string> svg_path;
  std::string in_path;
};

/// Thrown by parse_args for --help; carries the usage text.
struct HelpRequested : std::runtime_error {
  explicit HelpRequested(const std::string& text) : std::runtime_error(text) {}
};

/// `args` excludes the program name. `--config FILE` (anywhere) reads
/// key=value lines that act as flags placed before the command-line ones.
/// Throws UsageError, ProblemError (unknown problem) or IoError.
CliConfig parse_args(std::span<const std::string> args);

/// Runs a parsed command. Returns 0 on success.
int dispatch(const CliConfig& config, std::ostream& out);

/// parse_args + dispatch with error reporting. Exit codes: 1 usage,
/// 2 problem/registry, 3 I/O, 4 anything else.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// NMPS_THREADS, 0 when unset or empty.
std::size_t threads_from_env();

}  // namespace nmps::cli
