#include <ostream>

#include "nmps/format.hpp"
#include "nmps/stationarity.hpp"
#include "nmps/trace.hpp"

namespace nmps {

std::vector<ChiReportRow> chi_report(const ProblemSpec& problem, const Trace& trace,
                                     double lipschitz_L, double grad_bound_gamma) {
  std::vector<ChiReportRow> rows;
  const auto add = [&](const Vector& x, double delta) {
    const TheoremBoundInputs bound{lipschitz_L, grad_bound_gamma, x.size(), delta};
    const double value = chi(fd_gradient(problem, x), x, problem.bounds).value;
    rows.push_back({x, value, delta, bound.rhs()});
  };

  Vector current;
  double last_delta = 0.0;
  for (const auto& event : trace.events) {
    if (const auto* e = std::get_if<EvalRecord>(&event)) {
      if (e->direction == kStartDirection) current = e->x;
      last_delta = e->delta;
    } else if (const auto* a = std::get_if<AcceptRecord>(&event)) {
      add(current, a->delta);
      current = a->x;
    }
  }
  if (!current.empty()) add(current, last_delta);
  return rows;
}

void write_chi_report_csv(std::ostream& out, const std::string& problem,
                          std::span<const ChiReportRow> rows) {
  out << "problem,x,chi,delta,bound_rhs\n";
  for (const auto& row : rows) {
    out << problem << ',';
    for (std::size_t i = 0; i < row.x.size(); ++i) out << (i ? " " : "") << format_real(row.x[i]);
    out << ',' << format_real(row.chi) << ',' << format_real(row.delta) << ','
        << format_real(row.bound_rhs) << '\n';
  }
}

}  // namespace nmps
