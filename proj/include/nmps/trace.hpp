#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "nmps/problem.hpp"

namespace nmps {

/// Poll directions are numbered +e1, -e1, +e2, -e2, ...; index 2i is +e_i.
inline constexpr int kStartDirection = -1;

struct EvalRecord {
  std::size_t k = 0;   // outer iteration
  std::size_t fe = 0;  // evaluation counter after this record
  Vector x;
  double f = 0.0;
  double delta = 0.0;
  int direction = kStartDirection;
  double f_ref = 0.0;
  double eta = 0.0;
  bool cached = false;
  bool nonfinite = false;
  bool passed = false;  // accept_trial outcome

  bool operator==(const EvalRecord&) const = default;
};

/// x_{k+1} accepted at iteration k using step `delta`.
struct AcceptRecord {
  std::size_t k = 0;
  Vector x;
  double f = 0.0;
  double delta = 0.0;
  double f_ref = 0.0;
  double eta = 0.0;
  int direction = 0;

  bool operator==(const AcceptRecord&) const = default;
};

struct HalvingRecord {
  std::size_t k = 0;
  double from = 0.0;
  double to = 0.0;

  bool operator==(const HalvingRecord&) const = default;
};

using TraceEvent = std::variant<EvalRecord, AcceptRecord, HalvingRecord>;

struct Trace {
  std::vector<TraceEvent> events;

  std::vector<EvalRecord> evaluations() const;
  std::vector<AcceptRecord> accepted() const;

  bool operator==(const Trace&) const = default;
};

/// Signed 1-based coordinate label of a poll direction: "+1", "-1", "+2", ...
/// and "0" for the start point.
std::string direction_label(int direction);

/// Line-oriented CSV, header `event,k,delta,dir,f,accepted`. Event is one of
/// eval, hit (cache), accept, halve; reals are printed round-trip exact.
void write_trace_csv(std::ostream& out, const Trace& trace);

}  // namespace nmps
