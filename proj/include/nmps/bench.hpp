#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nmps/linesearch.hpp"
#include "nmps/problem.hpp"
#include "nmps/solver.hpp"

namespace nmps {

struct RunRecord {
  std::string problem;
  std::string strategy;
  std::size_t n = 0;
  double f0 = 0.0;
  /// (fe, best f so far) at the start and at every strict improvement,
  /// counted over all evaluations including rejected trials.
  std::vector<std::pair<std::size_t, double>> best_so_far;
  StopReason stop = StopReason::MaxFe;
  std::size_t fe = 0;
  std::size_t iterations = 0;
  double f_final = 0.0;
  bool failed = false;
  std::string error;
  Trace trace;  // empty for records loaded from CSV

  /// Lowest value seen during the run (+inf for failed runs).
  double best() const;
};

RunRecord make_record(const ProblemSpec& problem, std::string strategy, RunResult result);

/// f0 - f >= (1 - tau)(f0 - f_low), inclusive.
bool is_solved(double f0, double f, double f_low, double tau);

/// First evaluation count at which the best-so-far value passes is_solved.
std::optional<std::size_t> fe_to_solve(const RunRecord& record, double f_low, double tau);

struct ResultTable {
  double tau = 0.0;
  std::vector<std::string> problems;
  std::vector<std::string> strategies;
  std::vector<double> f_low;  // per problem, min over strategies of best()
  std::vector<std::vector<std::optional<std::size_t>>> t;  // [problem][strategy]
};

/// Problems and strategies keep their order of first appearance in `records`.
ResultTable build_table(std::span<const RunRecord> records, double tau);

struct RatioMatrix {
  double tau = 0.0;
  std::vector<std::string> problems;  // retained: solved by at least one strategy
  std::vector<std::string> strategies;
  std::vector<std::vector<double>> r;  // +inf where unsolved
  std::vector<std::string> dropped;    // solved by nobody at this tau
};

RatioMatrix perf_ratios(const ResultTable& table);

struct ProfileCurve {
  std::string strategy;
  double tau = 0.0;
  std::vector<std::pair<double, double>> points;  // (alpha, rho)
};

/// Fraction of retained problems with r <= alpha, per strategy.
std::vector<ProfileCurve> profile(const RatioMatrix& ratios, std::span<const double> alphas);

/// 2^(j/4) for j = 0..40.
std::vector<double> default_alpha_grid();

/// 1e-1, 1e-3, 1e-5
std::vector<double> default_taus();

struct MatrixRun {
  std::vector<RunRecord> records;  // problem-major, strategy-minor
  std::vector<ResultTable> tables;  // one per tau
};

/// One solve per (problem, strategy). `threads` = 0 runs sequentially; the
/// output does not depend on it.
MatrixRun run_matrix(std::span<const ProblemSpec> problems,
                     std::span<const StrategyKind> strategies, const SolverConfig& config,
                     std::span<const double> taus, std::size_t threads = 0);

// CSV / SVG output.

/// `problem,strategy,n,fe,iters,stop,f0,f_final`
void write_results_csv(std::ostream& out, std::span<const RunRecord> records);
/// `problem,strategy,fe,best_f`: the best-so-far sequence of every record.
void write_history_csv(std::ostream& out, std::span<const RunRecord> records);
/// `strategy,tau,alpha,rho`
void write_profile_csv(std::ostream& out, std::span<const ProfileCurve> curves);
/// `tau,problem` for problems no strategy solved at that tau.
void write_unsolved_csv(std::ostream& out, std::span<const RatioMatrix> ratios);
/// One panel per tau, one step polyline per strategy.
void write_profile_svg(std::ostream& out, std::span<const ProfileCurve> curves);

/// Inverse of write_results_csv + write_history_csv. Throws IoError on
/// malformed input.
std::vector<RunRecord> read_records(std::istream& results, std::istream& history);

/// "r.csv" -> "r.history.csv"
std::string history_path_for(const std::string& results_path);

// File wrappers; failures raise IoError naming the path.
void save_text(const std::string& path, const std::string& content);
std::string load_text(const std::string& path);

}  // namespace nmps
