#pragma once

#include <cstddef>
#include <string>

#include "nmps/linesearch.hpp"
#include "nmps/problem.hpp"
#include "nmps/trace.hpp"

namespace nmps {

// Post-hoc checks of a recorded run. Each returns how many items were checked
// and a description of the first violation found.

struct AuditReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::string first_violation;

  bool ok() const { return violations == 0; }
  void fail(std::string what);
};

/// Every accepted step satisfies f_new <= f_ref + eta_k - delta^2 with the
/// recorded fields, and every recorded pass/fail flag replays identically.
AuditReport audit_acceptance(const Trace& trace);

/// Recomputes f_ref and eta_k by replaying the accepted values through a
/// fresh AcceptanceStrategy and compares them bit for bit.
AuditReport audit_reference_values(const Trace& trace, const StrategyParams& params,
                                   const EtaSchedule& eta);

AuditReport audit_feasibility(const Trace& trace, const Bounds& bounds);

/// Max-memory block inequality. With f(x_{l(k)}) the largest of the M values
/// ending at index kM, every later iterate kM+t, t = 1..M, satisfies
/// f(x_{kM+t}) <= f(x_{l(k)}) + eta_{kM} + ... + eta_{kM+t-1} - delta_{kM+t-1}^2.
AuditReport audit_block_decrease(const Trace& trace, std::size_t memory);

/// sum_{k>=1} delta^2_{l(k)-1} <= f(x_0) - f_final + eta_total over the
/// complete blocks of the run.
AuditReport audit_step_summability(const Trace& trace, std::size_t memory, double eta_total);

/// Every evaluated point differs from x_0 by integer multiples of the
/// smallest step used. Only meaningful when delta0 is a power of two.
AuditReport audit_dyadic_lattice(const Trace& trace);

}  // namespace nmps
