#include "nmps/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nmps/errors.hpp"

namespace nmps {

void SolverConfig::validate() const {
  if (!(delta0 > 0.0)) throw UsageError("delta0 must be positive");
  if (!(delta_tol > 0.0)) throw UsageError("delta_tol must be positive");
  if (!(delta_tol < delta0)) throw UsageError("delta_tol must be smaller than delta0");
  if (max_fe == 0) throw UsageError("max_fe must be positive");
  if (max_it == 0) throw UsageError("max_it must be positive");
  if (strategy.memory == 0) throw UsageError("memory size M must be positive");
  if (!(strategy.r >= 0.0 && strategy.r <= 1.0)) throw UsageError("r must lie in [0, 1]");
  static_cast<void>(EtaSchedule{eta_base});
}

std::string_view stop_label(StopReason reason) {
  switch (reason) {
    case StopReason::Tol: return "TOL";
    case StopReason::MaxFe: return "MaxFE";
    case StopReason::MaxIt: return "MaxIt";
  }
  return "?";
}

StopReason stop_from_label(std::string_view label) {
  for (auto r : {StopReason::Tol, StopReason::MaxFe, StopReason::MaxIt}) {
    if (stop_label(r) == label) return r;
  }
  throw std::invalid_argument("unknown stop reason '" + std::string(label) + "'");
}

RunState initial_state(const ProblemSpec& problem, const SolverConfig& config) {
  config.validate();
  if (problem.start.size() != problem.dim()) {
    throw ProblemError("start point of " + problem.name + " has the wrong dimension");
  }
  Vector x0 = project(problem.start, problem.bounds);
  EvalCounter counter;
  const double f0 = evaluate(problem, x0, counter);
  if (!std::isfinite(f0)) {
    throw ProblemError("objective of " + problem.name + " is not finite at the start point");
  }
  RunState state{x0, f0, config.delta0, 0, AcceptanceStrategy(config.strategy, f0), counter,
                 EvalCache(config.cache_capacity), Trace{}};
  state.cache.insert(x0, f0);
  state.trace.events.emplace_back(EvalRecord{.k = 0,
                                             .fe = counter.count(),
                                             .x = x0,
                                             .f = f0,
                                             .delta = config.delta0,
                                             .direction = kStartDirection,
                                             .f_ref = f0,
                                             .eta = 0.0,
                                             .cached = false,
                                             .nonfinite = false,
                                             .passed = true});
  return state;
}

std::vector<Candidate> poll_candidates(std::span<const double> x, double delta,
                                       const Bounds& bounds) {
  std::vector<Candidate> out;
  out.reserve(2 * x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int sign : {+1, -1}) {
      const double xi = sign > 0 ? x[i] + delta : x[i] - delta;
      if (!(bounds.lower(i) <= xi && xi <= bounds.upper(i))) continue;
      Candidate c{static_cast<int>(2 * i) + (sign > 0 ? 0 : 1), Vector(x.begin(), x.end())};
      c.point[i] = xi;
      out.push_back(std::move(c));
    }
  }
  return out;
}

PollResult try_poll(RunState& state, const ProblemSpec& problem, const SolverConfig& config,
                    double f_ref, double eta_k) {
  PollResult result;
  for (auto& candidate : poll_candidates(state.x, state.delta, problem.bounds)) {
    EvalRecord record;
    record.k = state.k;
    record.delta = state.delta;
    record.direction = candidate.direction;
    record.f_ref = f_ref;
    record.eta = eta_k;
    if (auto hit = state.cache.lookup(candidate.point)) {
      record.f = *hit;
      record.cached = true;
    } else {
      const double raw = problem.objective(candidate.point);
      state.counter.increment();
      record.nonfinite = !std::isfinite(raw);
      record.f = record.nonfinite ? kInf : raw;
      state.cache.insert(candidate.point, record.f);
    }
    record.fe = state.counter.count();
    record.passed = accept_trial(record.f, f_ref, eta_k, state.delta);
    const double f = record.f;
    const bool passed = record.passed;
    record.x = candidate.point;
    state.trace.events.emplace_back(std::move(record));

    if (passed && (!result.best || f < result.f_best)) {
      result.f_best = f;
      result.best = std::move(candidate);
    }
    if (state.counter.count() >= config.max_fe) {
      result.budget_exhausted = true;
      return result;
    }
  }
  return result;
}

double next_delta(double delta_used) { return std::min(1.0, 2.0 * delta_used); }

AdvanceEvent advance(RunState& state, const ProblemSpec& problem, const SolverConfig& config,
                     const EtaSchedule& eta) {
  // eta_k and the reference value stay fixed across the halvings of one
  // iteration.
  const double eta_k = eta.at(state.k);
  const double f_ref = state.strategy.reference_value(state.f);
  for (;;) {
    PollResult poll = try_poll(state, problem, config, f_ref, eta_k);
    if (poll.budget_exhausted) return AdvanceEvent::FeStop;
    if (poll.best) {
      const double delta_used = state.delta;
      state.trace.events.emplace_back(AcceptRecord{.k = state.k,
                                                   .x = poll.best->point,
                                                   .f = poll.f_best,
                                                   .delta = delta_used,
                                                   .f_ref = f_ref,
                                                   .eta = eta_k,
                                                   .direction = poll.best->direction});
      state.x = std::move(poll.best->point);
      state.f = poll.f_best;
      state.strategy.observe_accept(state.f, eta_k);
      state.delta = next_delta(delta_used);
      ++state.k;
      return AdvanceEvent::Accepted;
    }
    const double halved = state.delta / 2.0;
    state.trace.events.emplace_back(HalvingRecord{state.k, state.delta, halved});
    state.delta = halved;
    if (halved < config.delta_tol) return AdvanceEvent::TolStop;
  }
}

RunResult solve(const ProblemSpec& problem, const SolverConfig& config) {
  const EtaSchedule eta(config.eta_base);
  RunState state = initial_state(problem, config);
  const double f0 = state.f;

  StopReason stop = StopReason::MaxIt;
  if (state.counter.count() >= config.max_fe) {
    stop = StopReason::MaxFe;
  } else {
    while (state.k < config.max_it) {
      const AdvanceEvent event = advance(state, problem, config, eta);
      if (event == AdvanceEvent::TolStop) {
        stop = StopReason::Tol;
        break;
      }
      if (event == AdvanceEvent::FeStop) {
        stop = StopReason::MaxFe;
        break;
      }
    }
  }

  return RunResult{.x_final = std::move(state.x),
                   .f_final = state.f,
                   .f0 = f0,
                   .stop = stop,
                   .fe = state.counter.count(),
                   .iterations = state.k,
                   .final_delta = state.delta,
                   .trace = std::move(state.trace)};
}

}  // namespace nmps
