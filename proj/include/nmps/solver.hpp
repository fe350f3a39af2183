#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nmps/eval_cache.hpp"
#include "nmps/linesearch.hpp"
#include "nmps/problem.hpp"
#include "nmps/trace.hpp"

namespace nmps {

struct SolverConfig {
  double delta0 = 1.0;
  double delta_tol = 1e-6;
  std::size_t max_fe = 2500;
  std::size_t max_it = 5000;
  StrategyParams strategy;
  double eta_base = 1.1;
  std::size_t cache_capacity = 100000;

  /// Throws UsageError on inconsistent values.
  void validate() const;
};

enum class StopReason { Tol, MaxFe, MaxIt };

/// "TOL", "MaxFE", "MaxIt".
std::string_view stop_label(StopReason reason);
StopReason stop_from_label(std::string_view label);

struct RunState {
  Vector x;
  double f = 0.0;
  double delta = 1.0;
  std::size_t k = 0;
  AcceptanceStrategy strategy;
  EvalCounter counter;
  EvalCache cache;
  Trace trace;
};

/// Projects the start point and evaluates it. Throws ProblemError when the
/// objective is not finite there.
RunState initial_state(const ProblemSpec& problem, const SolverConfig& config);

struct Candidate {
  int direction = 0;
  Vector point;
};

/// x + delta d for d in (+e1, -e1, +e2, -e2, ...), dropping infeasible points.
std::vector<Candidate> poll_candidates(std::span<const double> x, double delta,
                                       const Bounds& bounds);

struct PollResult {
  std::optional<Candidate> best;
  double f_best = kInf;
  bool budget_exhausted = false;
};

/// Evaluates every feasible candidate at state.delta and returns the one with
/// the lowest f among those passing the sufficient-decrease test (ties go to
/// the lower direction index).
PollResult try_poll(RunState& state, const ProblemSpec& problem, const SolverConfig& config,
                    double f_ref, double eta_k);

enum class AdvanceEvent { Accepted, TolStop, FeStop };

/// One outer iteration: poll, halving delta after each failure, until a
/// point is accepted, delta drops below delta_tol, or the budget runs out.
AdvanceEvent advance(RunState& state, const ProblemSpec& problem, const SolverConfig& config,
                     const EtaSchedule& eta);

/// min{1, 2 delta}
double next_delta(double delta_used);

struct RunResult {
  Vector x_final;
  double f_final = 0.0;
  double f0 = 0.0;
  StopReason stop = StopReason::Tol;
  std::size_t fe = 0;
  std::size_t iterations = 0;
  // Step length held when the run ended; below delta_tol on a TOL stop.
  double final_delta = 0.0;
  Trace trace;
};

RunResult solve(const ProblemSpec& problem, const SolverConfig& config);

}  // namespace nmps
