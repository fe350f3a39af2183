#include <ostream>
#include <type_traits>

#include "nmps/format.hpp"
#include "nmps/trace.hpp"

namespace nmps {

std::vector<EvalRecord> Trace::evaluations() const {
  std::vector<EvalRecord> out;
  for (const auto& event : events) {
    if (const auto* e = std::get_if<EvalRecord>(&event)) out.push_back(*e);
  }
  return out;
}

std::vector<AcceptRecord> Trace::accepted() const {
  std::vector<AcceptRecord> out;
  for (const auto& event : events) {
    if (const auto* a = std::get_if<AcceptRecord>(&event)) out.push_back(*a);
  }
  return out;
}

std::string direction_label(int direction) {
  if (direction < 0) return "0";
  const int coordinate = direction / 2 + 1;
  return (direction % 2 == 0 ? "+" : "-") + std::to_string(coordinate);
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << "event,k,delta,dir,f,accepted\n";
  for (const auto& event : trace.events) {
    std::visit(
        [&out](const auto& r) {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, EvalRecord>) {
            out << (r.cached ? "hit" : "eval") << ',' << r.k << ',' << format_real(r.delta) << ','
                << direction_label(r.direction) << ',' << format_real(r.f) << ','
                << (r.passed ? 1 : 0) << '\n';
          } else if constexpr (std::is_same_v<T, AcceptRecord>) {
            out << "accept," << r.k << ',' << format_real(r.delta) << ','
                << direction_label(r.direction) << ',' << format_real(r.f) << ",1\n";
          } else {
            out << "halve," << r.k << ',' << format_real(r.to) << ",,,0\n";
          }
        },
        event);
  }
}

}  // namespace nmps
