#include "nmps/problem.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "nmps/errors.hpp"

namespace nmps {
namespace {

// Objectives follow the Hock-Schittkowski collection numbering. Start points
// are the published ones; solve() projects them onto the box.

double rosenbrock(std::span<const double> x) {
  const double a = x[1] - x[0] * x[0];
  const double b = 1.0 - x[0];
  return 100.0 * a * a + b * b;
}

double hs3(std::span<const double> x) {
  const double d = x[1] - x[0];
  return x[1] + 1e-5 * d * d;
}

double hs4(std::span<const double> x) {
  const double a = x[0] + 1.0;
  return a * a * a / 3.0 + x[1];
}

double hs5(std::span<const double> x) {
  const double d = x[0] - x[1];
  return std::sin(x[0] + x[1]) + d * d - 1.5 * x[0] + 2.5 * x[1] + 1.0;
}

// u_i = 25 + (-50 ln(0.01 i))^(2/3), i = 1..99
const std::array<double, 99>& hs25_abscissae() {
  static const std::array<double, 99> u = [] {
    std::array<double, 99> out{};
    for (int i = 1; i <= 99; ++i) {
      out[i - 1] = 25.0 + std::pow(-50.0 * std::log(0.01 * i), 2.0 / 3.0);
    }
    return out;
  }();
  return u;
}

double hs25(std::span<const double> x) {
  const auto& u = hs25_abscissae();
  double sum = 0.0;
  for (int i = 1; i <= 99; ++i) {
    const double r = -0.01 * i + std::exp(-std::pow(u[i - 1] - x[1], x[2]) / x[0]);
    sum += r * r;
  }
  return sum;
}

// Colville function.
double hs38(std::span<const double> x) {
  const double a = x[1] - x[0] * x[0];
  const double b = x[3] - x[2] * x[2];
  const double c = x[1] - 1.0;
  const double d = x[3] - 1.0;
  return 100.0 * a * a + (1.0 - x[0]) * (1.0 - x[0]) + 90.0 * b * b +
         (1.0 - x[2]) * (1.0 - x[2]) + 10.1 * (c * c + d * d) + 19.8 * c * d;
}

double hs45(std::span<const double> x) {
  return 2.0 - std::accumulate(x.begin(), x.end(), 1.0, std::multiplies<>()) / 120.0;
}

double hs110(std::span<const double> x) {
  double sum = 0.0;
  double prod = 1.0;
  for (double xi : x) {
    const double a = std::log(xi - 2.0);
    const double b = std::log(10.0 - xi);
    sum += a * a + b * b;
    prod *= xi;
  }
  return sum - std::pow(prod, 0.2);
}

double sphere(std::span<const double> x) {
  return std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
}

ProblemSpec make(std::string name, Bounds bounds, Objective f, Vector start,
                 std::optional<double> best) {
  return ProblemSpec{std::move(name), std::move(bounds), std::move(f), std::move(start), best};
}

ProblemSpec build(std::string_view name) {
  if (name == "hs1") {
    return make("hs1", Bounds({-kInf, -1.5}, {kInf, kInf}), rosenbrock, {-2.0, 1.0}, 0.0);
  }
  if (name == "hs2") {
    // Minimizer (1.2243707487, 1.5) lies on the active bound x2 >= 1.5.
    return make("hs2", Bounds({-kInf, 1.5}, {kInf, kInf}), rosenbrock, {-2.0, 1.0},
                0.0504261879);
  }
  if (name == "hs3") {
    return make("hs3", Bounds({-kInf, 0.0}, {kInf, kInf}), hs3, {10.0, 1.0}, 0.0);
  }
  if (name == "hs4") {
    return make("hs4", Bounds({1.0, 0.0}, {kInf, kInf}), hs4, {1.125, 0.125}, 8.0 / 3.0);
  }
  if (name == "hs5") {
    // f* = -sqrt(3)/2 - pi/3
    return make("hs5", Bounds({-1.5, -3.0}, {4.0, 3.0}), hs5, {0.0, 0.0}, -1.9132229549);
  }
  if (name == "hs25") {
    return make("hs25", Bounds({0.1, 0.0, 0.0}, {100.0, 25.6, 5.0}), hs25, {100.0, 12.5, 3.0},
                0.0);
  }
  if (name == "hs38") {
    return make("hs38", Bounds::uniform(4, -10.0, 10.0), hs38, {-3.0, -1.0, -3.0, -1.0}, 0.0);
  }
  if (name == "hs45") {
    return make("hs45", Bounds(Vector(5, 0.0), {1.0, 2.0, 3.0, 4.0, 5.0}), hs45, Vector(5, 2.0),
                1.0);
  }
  if (name == "hs110") {
    return make("hs110", Bounds::uniform(10, 2.001, 9.999), hs110, Vector(10, 9.0),
                -45.7784697);
  }
  if (name == "sphere2") {
    auto p = make_sphere(2, {1.0, 1.0});
    p.name = "sphere2";
    return p;
  }
  if (name == "rosenbrock2") {
    auto p = make("rosenbrock2", Bounds::uniform(2, -2.0, 2.0), rosenbrock, {-1.2, 1.0}, 0.0);
    p.in_benchmark_set = false;
    return p;
  }
  std::string message = "unknown problem '" + std::string(name) + "'; available:";
  for (const auto& n : registry_names()) message += " " + n;
  for (const auto& n : synthetic_names()) message += " " + n;
  throw ProblemError(message);
}

}  // namespace

const std::vector<std::string>& registry_names() {
  static const std::vector<std::string> names = {"hs1",  "hs2",  "hs3",  "hs4",  "hs5",
                                                 "hs25", "hs38", "hs45", "hs110"};
  return names;
}

const std::vector<std::string>& synthetic_names() {
  static const std::vector<std::string> names = {"sphere2", "rosenbrock2"};
  return names;
}

ProblemSpec registry_get(std::string_view name) { return build(name); }

ProblemSpec make_sphere(std::size_t dim, Vector start) {
  auto p = make("sphere" + std::to_string(dim), Bounds::uniform(dim, -1.0, 1.0), sphere,
                std::move(start), 0.0);
  p.in_benchmark_set = false;
  return p;
}

std::string registry_listing() {
  std::ostringstream out;
  out << "name,dim,n_bound_constraints,f_best_known\n";
  for (const auto& name : registry_names()) {
    const auto p = registry_get(name);
    char best[32];
    std::snprintf(best, sizeof best, "%.10g", *p.best_known);
    out << p.name << ',' << p.dim() << ',' << p.bounds.constraint_count() << ',' << best << '\n';
  }
  return out.str();
}

}  // namespace nmps
