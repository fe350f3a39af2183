#include "nmps/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nmps/errors.hpp"

namespace nmps {

EtaSchedule::EtaSchedule(double base) : base_(base) {
  if (!(base > 1.0) || !std::isfinite(base)) {
    throw UsageError("eta base must be a finite number > 1, got " + std::to_string(base));
  }
}

double EtaSchedule::at(std::size_t k) const { return std::pow(base_, -static_cast<double>(k)); }

std::string_view strategy_token(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::MaxMemory: return "nmps";
    case StrategyKind::CLine: return "cline";
    case StrategyKind::Lambda: return "lambda";
    case StrategyKind::Armijo: return "armijo";
  }
  return "?";
}

StrategyKind strategy_from_token(std::string_view token) {
  for (auto kind : {StrategyKind::MaxMemory, StrategyKind::CLine, StrategyKind::Lambda,
                    StrategyKind::Armijo}) {
    if (strategy_token(kind) == token) return kind;
  }
  throw UsageError("unknown strategy '" + std::string(token) +
                   "'; expected one of nmps, cline, lambda, armijo");
}

bool accept_trial(double f_trial, double f_ref, double eta_k, double delta) {
  if (!std::isfinite(f_trial)) return false;
  return f_trial <= f_ref + eta_k - delta * delta;
}

AcceptanceStrategy::AcceptanceStrategy(const StrategyParams& params, double f0)
    : params_(params), c_(f0) {
  if (params_.memory == 0) throw UsageError("memory size M must be positive");
  if (!(params_.r >= 0.0 && params_.r <= 1.0)) throw UsageError("r must lie in [0, 1]");
  history_.push_back(f0);
}

double AcceptanceStrategy::reference_value(double f_current) const {
  switch (params_.kind) {
    case StrategyKind::MaxMemory:
      return *std::max_element(history_.begin(), history_.end());
    case StrategyKind::CLine:
      return c_;
    case StrategyKind::Lambda: {
      // m(k) = min{k, M-1} most recent values with weights 1/m(k); the empty
      // sum at m(k) = 0 falls back to f_current.
      const std::size_t m = std::min(k_, params_.memory - 1);
      if (m == 0) return f_current;
      const double weight = 1.0 / static_cast<double>(m);
      double mean = 0.0;
      for (auto it = history_.rbegin(); it != history_.rbegin() + static_cast<long>(m); ++it) {
        mean += weight * *it;
      }
      return std::max(f_current, mean);
    }
    case StrategyKind::Armijo:
      return f_current;
  }
  return f_current;
}

void AcceptanceStrategy::observe_accept(double f_new, double eta_k) {
  const double q_old = q_;
  q_ = params_.r * q_old + 1.0;
  c_ = (params_.r * q_old * (c_ + eta_k) + f_new) / q_;

  const std::size_t keep = params_.kind == StrategyKind::Armijo ? 1 : params_.memory;
  history_.push_back(f_new);
  while (history_.size() > keep) history_.pop_front();
  ++k_;
}

}  // namespace nmps
