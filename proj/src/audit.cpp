#include "nmps/audit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "nmps/format.hpp"

namespace nmps {
namespace {

struct Iterates {
  std::vector<double> f;      // f(x_0), f(x_1), ...
  std::vector<double> delta;  // delta[j] took x_j to x_{j+1}
  std::vector<double> eta;    // eta[j] used at iteration j
};

Iterates collect(const Trace& trace) {
  Iterates it;
  for (const auto& event : trace.events) {
    if (const auto* e = std::get_if<EvalRecord>(&event); e && e->direction == kStartDirection) {
      it.f.push_back(e->f);
    } else if (const auto* a = std::get_if<AcceptRecord>(&event)) {
      it.f.push_back(a->f);
      it.delta.push_back(a->delta);
      it.eta.push_back(a->eta);
    }
  }
  return it;
}

// Latest index of the maximum over f[first..last].
std::size_t window_argmax(const std::vector<double>& f, std::size_t first, std::size_t last) {
  std::size_t best = last;
  for (std::size_t j = last + 1; j-- > first;) {
    if (f[j] > f[best]) best = j;
  }
  return best;
}

// Slack for comparing two differently rounded sums of the same terms.
double rounding_slack(double scale, std::size_t terms) {
  return 4.0 * static_cast<double>(terms + 1) * 0x1p-52 * (1.0 + std::abs(scale));
}

}  // namespace

void AuditReport::fail(std::string what) {
  if (violations++ == 0) first_violation = std::move(what);
}

AuditReport audit_acceptance(const Trace& trace) {
  AuditReport report;
  for (const auto& event : trace.events) {
    if (const auto* a = std::get_if<AcceptRecord>(&event)) {
      ++report.checked;
      if (!accept_trial(a->f, a->f_ref, a->eta, a->delta)) {
        report.fail("accepted step at k=" + std::to_string(a->k) + " has f=" + format_real(a->f) +
                    " above threshold " + format_real(a->f_ref + a->eta - a->delta * a->delta));
      }
    } else if (const auto* e = std::get_if<EvalRecord>(&event);
               e && e->direction != kStartDirection) {
      ++report.checked;
      if (accept_trial(e->f, e->f_ref, e->eta, e->delta) != e->passed) {
        report.fail("evaluation at k=" + std::to_string(e->k) + " dir " +
                    direction_label(e->direction) + " has an inconsistent pass flag");
      }
    }
  }
  return report;
}

AuditReport audit_reference_values(const Trace& trace, const StrategyParams& params,
                                   const EtaSchedule& eta) {
  AuditReport report;
  const Iterates it = collect(trace);
  if (it.f.empty()) return report;
  AcceptanceStrategy strategy(params, it.f.front());
  double f_current = it.f.front();
  std::size_t k = 0;
  for (const auto& event : trace.events) {
    if (const auto* e = std::get_if<EvalRecord>(&event); e && e->direction != kStartDirection) {
      ++report.checked;
      if (e->k != k || e->eta != eta.at(k) || e->f_ref != strategy.reference_value(f_current)) {
        report.fail("reference value mismatch at k=" + std::to_string(e->k));
      }
    } else if (const auto* a = std::get_if<AcceptRecord>(&event)) {
      strategy.observe_accept(a->f, a->eta);
      f_current = a->f;
      ++k;
    }
  }
  return report;
}

AuditReport audit_feasibility(const Trace& trace, const Bounds& bounds) {
  AuditReport report;
  for (const auto& event : trace.events) {
    const Vector* x = nullptr;
    if (const auto* e = std::get_if<EvalRecord>(&event)) x = &e->x;
    if (const auto* a = std::get_if<AcceptRecord>(&event)) x = &a->x;
    if (x == nullptr) continue;
    ++report.checked;
    if (!is_feasible(*x, bounds)) report.fail("infeasible point recorded");
  }
  return report;
}

AuditReport audit_block_decrease(const Trace& trace, std::size_t memory) {
  AuditReport report;
  const Iterates it = collect(trace);
  const std::size_t last = it.f.empty() ? 0 : it.f.size() - 1;
  for (std::size_t block_end = 0; block_end < last; block_end += memory) {
    const std::size_t first = block_end >= memory - 1 ? block_end - (memory - 1) : 0;
    const double f_block = it.f[window_argmax(it.f, first, block_end)];
    double eta_sum = 0.0;
    for (std::size_t t = 1; t <= memory && block_end + t <= last; ++t) {
      const std::size_t j = block_end + t;
      eta_sum += it.eta[j - 1];
      const double step = it.delta[j - 1];
      const double bound = f_block + eta_sum - step * step;
      ++report.checked;
      if (it.f[j] > bound + rounding_slack(f_block, t)) {
        std::ostringstream what;
        what << "block ending at " << block_end << ": f(x_" << j << ")=" << format_real(it.f[j])
             << " exceeds " << format_real(bound);
        report.fail(what.str());
      }
    }
  }
  return report;
}

AuditReport audit_step_summability(const Trace& trace, std::size_t memory, double eta_total) {
  AuditReport report;
  const Iterates it = collect(trace);
  if (it.f.empty()) return report;
  const std::size_t last = it.f.size() - 1;
  const double rhs = it.f.front() - it.f.back() + eta_total;
  double lhs = 0.0;
  std::size_t blocks = 0;
  for (std::size_t block_end = memory; block_end <= last; block_end += memory) {
    const std::size_t l = window_argmax(it.f, block_end - (memory - 1), block_end);
    lhs += it.delta[l - 1] * it.delta[l - 1];
    ++blocks;
  }
  report.checked = 1;
  if (lhs > rhs + rounding_slack(rhs, blocks)) {
    report.fail("sum of squared block steps " + format_real(lhs) + " exceeds " +
                format_real(rhs));
  }
  return report;
}

AuditReport audit_dyadic_lattice(const Trace& trace) {
  AuditReport report;
  const auto evals = trace.evaluations();
  if (evals.empty()) return report;
  const Vector& x0 = evals.front().x;
  double step = kInf;
  for (const auto& e : evals) step = std::min(step, e.delta);
  for (const auto& e : evals) {
    ++report.checked;
    for (std::size_t i = 0; i < x0.size(); ++i) {
      const double q = (e.x[i] - x0[i]) / step;
      if (std::abs(q - std::round(q)) > 1e-9 * std::max(1.0, std::abs(q))) {
        report.fail("point off the step lattice at k=" + std::to_string(e.k));
        break;
      }
    }
  }
  return report;
}

}  // namespace nmps
