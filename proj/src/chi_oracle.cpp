#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "nmps/stationarity.hpp"

namespace nmps {

// Lower bound on chi from feasible samples only:
//  * a dense grid over the first n-1 step coordinates, the last coordinate
//    chosen in closed form on its segment of box ∩ ball;
//  * face samples: every assignment of each coordinate to its lower limit,
//    upper limit or "free", with the free block pointing along -g and pushed
//    to the unit sphere.
double chi_bruteforce(std::span<const double> gradient, std::span<const double> x,
                      const Bounds& bounds, int resolution) {
  const std::size_t n = x.size();
  if (n == 0 || n > 3) throw std::invalid_argument("chi_bruteforce supports 1 <= n <= 3");
  if (resolution < 100) throw std::invalid_argument("resolution must be at least 100");

  std::array<double, 3> c{}, a{}, b{};
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = -gradient[i];
    if (bounds.upper(i) - bounds.lower(i) < 1e-12) {
      a[i] = b[i] = 0.0;
    } else {
      a[i] = std::max(-1.0, std::min(0.0, bounds.lower(i) - x[i]));
      b[i] = std::min(1.0, std::max(0.0, bounds.upper(i) - x[i]));
    }
  }

  double best = 0.0;
  const auto consider = [&](const std::array<double, 3>& w) {
    double sq = 0.0, value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] < a[i] || w[i] > b[i]) return;
      sq += w[i] * w[i];
      value += c[i] * w[i];
    }
    if (sq <= 1.0 + 1e-12) best = std::max(best, value);
  };

  // Grid part.
  const std::size_t last = n - 1;
  const auto node = [&](std::size_t i, int j) {
    return a[i] + (b[i] - a[i]) * static_cast<double>(j) / (resolution - 1);
  };
  const int outer0 = n >= 2 ? resolution : 1;
  const int outer1 = n >= 3 ? resolution : 1;
  for (int j0 = 0; j0 < outer0; ++j0) {
    for (int j1 = 0; j1 < outer1; ++j1) {
      std::array<double, 3> w{};
      double sq = 0.0;
      if (n >= 2) w[0] = node(0, j0), sq += w[0] * w[0];
      if (n >= 3) w[1] = node(1, j1), sq += w[1] * w[1];
      if (sq > 1.0) continue;
      const double room = std::sqrt(1.0 - sq);
      if (c[last] > 0.0) w[last] = std::min(b[last], room);
      if (c[last] < 0.0) w[last] = std::max(a[last], -room);
      consider(w);
    }
  }

  // Face part: 3^n assignments.
  int combos = 1;
  for (std::size_t i = 0; i < n; ++i) combos *= 3;
  for (int code = 0; code < combos; ++code) {
    std::array<double, 3> w{};
    std::array<bool, 3> free{};
    double fixed_sq = 0.0, free_sq = 0.0;
    int rest = code;
    for (std::size_t i = 0; i < n; ++i, rest /= 3) {
      const int choice = rest % 3;
      if (choice == 0) w[i] = a[i];
      if (choice == 1) w[i] = b[i];
      free[i] = choice == 2;
      if (free[i]) free_sq += c[i] * c[i];
      else fixed_sq += w[i] * w[i];
    }
    if (fixed_sq > 1.0) continue;
    if (free_sq > 0.0) {
      const double t = std::sqrt((1.0 - fixed_sq) / free_sq);
      for (std::size_t i = 0; i < n; ++i) {
        if (free[i]) w[i] = t * c[i];
      }
    }
    consider(w);
  }
  return best;
}

}  // namespace nmps
