#include "nmps/problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nmps {
namespace {

void check_dim(std::span<const double> x, const Bounds& bounds) {
  if (x.size() != bounds.dim()) {
    throw std::invalid_argument("dimension mismatch: point has " + std::to_string(x.size()) +
                                " entries, bounds have " + std::to_string(bounds.dim()));
  }
}

}  // namespace

Bounds::Bounds(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw std::invalid_argument("bounds must have positive dimension");
  if (lower_.size() != upper_.size()) {
    throw std::invalid_argument("lower and upper bounds differ in length");
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    // Also rejects NaN entries.
    if (!(lower_[i] < upper_[i])) {
      throw std::invalid_argument("bounds require lower < upper at index " + std::to_string(i));
    }
  }
}

Bounds Bounds::unbounded(std::size_t dim) { return Bounds(Vector(dim, -kInf), Vector(dim, kInf)); }

Bounds Bounds::uniform(std::size_t dim, double lower, double upper) {
  return Bounds(Vector(dim, lower), Vector(dim, upper));
}

std::size_t Bounds::constraint_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    count += std::isfinite(lower_[i]) ? 1 : 0;
    count += std::isfinite(upper_[i]) ? 1 : 0;
  }
  return count;
}

bool is_feasible(std::span<const double> x, const Bounds& bounds) {
  check_dim(x, bounds);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(bounds.lower(i) <= x[i] && x[i] <= bounds.upper(i))) return false;
  }
  return true;
}

Vector project(std::span<const double> x, const Bounds& bounds) {
  check_dim(x, bounds);
  Vector out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::clamp(out[i], bounds.lower(i), bounds.upper(i));
  }
  return out;
}

double evaluate(const ProblemSpec& problem, std::span<const double> x, EvalCounter& counter) {
  counter.increment();
  const double value = problem.objective(x);
  return std::isfinite(value) ? value : kInf;
}

}  // namespace nmps
