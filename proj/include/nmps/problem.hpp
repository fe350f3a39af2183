#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nmps {

using Vector = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Box l <= x <= u. Infinite entries mark a missing bound on that side.
class Bounds {
 public:
  Bounds(Vector lower, Vector upper);

  static Bounds unbounded(std::size_t dim);
  static Bounds uniform(std::size_t dim, double lower, double upper);

  std::size_t dim() const { return lower_.size(); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  double lower(std::size_t i) const { return lower_[i]; }
  double upper(std::size_t i) const { return upper_[i]; }

  /// Number of finite bound entries, counting each side separately.
  std::size_t constraint_count() const;

 private:
  Vector lower_;
  Vector upper_;
};

/// Inclusive membership test. Throws std::invalid_argument on size mismatch.
bool is_feasible(std::span<const double> x, const Bounds& bounds);

/// Componentwise clamp onto the box.
Vector project(std::span<const double> x, const Bounds& bounds);

using Objective = std::function<double(std::span<const double>)>;

struct ProblemSpec {
  std::string name;
  Bounds bounds;
  Objective objective;
  Vector start;
  std::optional<double> best_known;
  // False for the synthetic problems that exist only for testing.
  bool in_benchmark_set = true;

  std::size_t dim() const { return bounds.dim(); }
};

class EvalCounter {
 public:
  std::size_t count() const { return count_; }
  void increment() { ++count_; }

 private:
  std::size_t count_ = 0;
};

/// Calls the objective once and bumps the counter. Non-finite values come
/// back as +inf so that every acceptance test rejects them.
double evaluate(const ProblemSpec& problem, std::span<const double> x, EvalCounter& counter);

// Registry of the nine bound-constrained Hock-Schittkowski problems.

const std::vector<std::string>& registry_names();

/// Throws ProblemError listing the available names when `name` is unknown.
/// Also resolves the synthetic names from synthetic_names().
ProblemSpec registry_get(std::string_view name);

/// Test-only problems: "sphere2" (||x||^2 on [-1,1]^2) and "rosenbrock2"
/// (2-D Rosenbrock on [-2,2]^2).
const std::vector<std::string>& synthetic_names();

/// ||x||^2 on [-1,1]^n started from `start`.
ProblemSpec make_sphere(std::size_t dim, Vector start);

/// `name,dim,n_bound_constraints,f_best_known` with a header line.
std::string registry_listing();

}  // namespace nmps
