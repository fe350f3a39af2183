#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nmps/problem.hpp"
#include "nmps/trace.hpp"

namespace nmps {

// First-order diagnostics for the box-constrained problem. The solver never
// calls into this header; it is used for reporting and for tests.

/// Generators of K(x, eps): +i means +e_i (upper bound within eps), -i means
/// -e_i (lower bound within eps), 1-based. Empty means K = {0}.
struct ConeGenerators {
  std::vector<int> outward;
  double epsilon = 0.0;

  bool contains(int signed_index) const;
};

ConeGenerators k_generators(std::span<const double> x, const Bounds& bounds, double eps);

/// Poll directions (D+ numbering, 2i for +e_i and 2i+1 for -e_i) that
/// generate the polar cone K°.
std::vector<int> polar_generators(const ConeGenerators& cone, std::size_t dim);

struct ConeProjection {
  Vector on_cone;   // [v]_K
  Vector on_polar;  // [v]_K°
};

/// Moreau decomposition v = [v]_K + [v]_K° for the axis-aligned cone.
ConeProjection project_cone(std::span<const double> v, const ConeGenerators& cone);

/// Central differences with h_i = 1e-6 max(1, |x_i|), one-sided on
/// coordinates where the central stencil leaves the box. Throws
/// std::domain_error when neither side fits.
Vector fd_gradient(const ProblemSpec& problem, std::span<const double> x);

struct ChiResult {
  double value = 0.0;
  Vector omega;             // maximizer, x + omega feasible, ||omega|| <= 1
  double multiplier = 0.0;  // ball multiplier, 0 when the ball is inactive
};

/// chi(x) = max { -g.w : x + w in box, ||w|| <= 1 }.
ChiResult chi(std::span<const double> gradient, std::span<const double> x, const Bounds& bounds);

/// Grid-and-face enumeration lower bound on chi for dim <= 3. Shares no code
/// with chi(); used to cross-check it.
double chi_bruteforce(std::span<const double> gradient, std::span<const double> x,
                      const Bounds& bounds, int resolution);

struct TheoremBoundInputs {
  double lipschitz_L = 0.0;
  double grad_bound_gamma = 0.0;
  std::size_t n = 0;
  double delta = 0.0;

  /// sqrt(n) (L + gamma) delta
  double rhs() const;
};

struct ChiReportRow {
  Vector x;
  double chi = 0.0;
  double delta = 0.0;
  double bound_rhs = 0.0;
};

/// chi at every iterate of a recorded run (via fd_gradient) next to the
/// bound sqrt(n)(L + gamma) delta, where delta is the step used to leave the
/// iterate; the last row uses the final polled step.
std::vector<ChiReportRow> chi_report(const ProblemSpec& problem, const Trace& trace,
                                     double lipschitz_L, double grad_bound_gamma);

/// `problem,x,chi,delta,bound_rhs`, coordinates of x separated by spaces.
void write_chi_report_csv(std::ostream& out, const std::string& problem,
                          std::span<const ChiReportRow> rows);

}  // namespace nmps
