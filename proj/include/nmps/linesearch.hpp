#pragma once

#include <cstddef>
#include <deque>
#include <string_view>
#include <vector>

namespace nmps {

/// Forcing sequence eta_k = base^-k, summable for base > 1.
class EtaSchedule {
 public:
  explicit EtaSchedule(double base = 1.1);

  double base() const { return base_; }
  double at(std::size_t k) const;
  /// Sum over all k >= 0, base / (base - 1).
  double total() const { return base_ / (base_ - 1.0); }

 private:
  double base_;
};

inline double eta_at(const EtaSchedule& schedule, std::size_t k) { return schedule.at(k); }

enum class StrategyKind {
  MaxMemory,  // max of the last M accepted values
  CLine,      // weighted average C_k with Q_{k+1} = r Q_k + 1
  Lambda,     // max{f_k, mean of the last m(k) values}
  Armijo,     // current value only
};

/// Tokens: nmps, cline, lambda, armijo.
std::string_view strategy_token(StrategyKind kind);
/// Throws UsageError on an unknown token.
StrategyKind strategy_from_token(std::string_view token);

struct StrategyParams {
  StrategyKind kind = StrategyKind::MaxMemory;
  std::size_t memory = 15;  // M, for MaxMemory and Lambda
  double r = 0.85;          // CLine weight r_k, constant over k
};

/// Sufficient-decrease test shared by every strategy:
/// f_trial <= f_ref + eta_k - delta^2. Non-finite trials never pass.
bool accept_trial(double f_trial, double f_ref, double eta_k, double delta);

/// Reference-value memory of one run. Starts from f(x_0) with k = 0 and
/// advances by one for each accepted iterate.
class AcceptanceStrategy {
 public:
  AcceptanceStrategy(const StrategyParams& params, double f0);

  StrategyKind kind() const { return params_.kind; }
  const StrategyParams& params() const { return params_; }
  /// Number of accepted iterates observed so far (the iteration index k).
  std::size_t iteration() const { return k_; }

  /// Value compared against in the sufficient-decrease test at iteration k.
  double reference_value(double f_current) const;

  void observe_accept(double f_new, double eta_k);

  /// Stored f-values, oldest first (MaxMemory and Lambda).
  const std::deque<double>& history() const { return history_; }
  double q() const { return q_; }
  double c() const { return c_; }

 private:
  StrategyParams params_;
  std::size_t k_ = 0;
  std::deque<double> history_;
  double q_ = 1.0;
  double c_ = 0.0;
};

}  // namespace nmps
