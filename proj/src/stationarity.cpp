#include "nmps/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nmps/errors.hpp"

namespace nmps {
namespace {

constexpr double kThinBox = 1e-12;

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double vi : v) s += vi * vi;
  return std::sqrt(s);
}

}  // namespace

bool ConeGenerators::contains(int signed_index) const {
  return std::find(outward.begin(), outward.end(), signed_index) != outward.end();
}

ConeGenerators k_generators(std::span<const double> x, const Bounds& bounds, double eps) {
  if (x.size() != bounds.dim()) throw std::invalid_argument("dimension mismatch");
  if (!(eps >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
  ConeGenerators cone{{}, eps};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int index = static_cast<int>(i) + 1;
    if (x[i] - bounds.lower(i) <= eps) cone.outward.push_back(-index);
    if (bounds.upper(i) - x[i] <= eps) cone.outward.push_back(index);
  }
  return cone;
}

std::vector<int> polar_generators(const ConeGenerators& cone, std::size_t dim) {
  std::vector<int> out;
  for (std::size_t i = 0; i < dim; ++i) {
    const int index = static_cast<int>(i) + 1;
    if (!cone.contains(index)) out.push_back(static_cast<int>(2 * i));
    if (!cone.contains(-index)) out.push_back(static_cast<int>(2 * i + 1));
  }
  return out;
}

ConeProjection project_cone(std::span<const double> v, const ConeGenerators& cone) {
  ConeProjection p{Vector(v.size(), 0.0), Vector(v.size(), 0.0)};
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int index = static_cast<int>(i) + 1;
    const bool up = cone.contains(index);
    const bool down = cone.contains(-index);
    double k = 0.0;
    if (up && down) {
      k = v[i];
    } else if (up) {
      k = std::max(v[i], 0.0);
    } else if (down) {
      k = std::min(v[i], 0.0);
    }
    p.on_cone[i] = k;
    p.on_polar[i] = v[i] - k;
  }
  return p;
}

Vector fd_gradient(const ProblemSpec& problem, std::span<const double> x) {
  const Bounds& b = problem.bounds;
  if (!is_feasible(x, b)) throw std::domain_error("fd_gradient needs a feasible point");
  Vector g(x.size());
  Vector probe(x.begin(), x.end());
  const auto inside = [&](std::size_t i, double v) { return b.lower(i) <= v && v <= b.upper(i); };
  double f0 = 0.0;
  bool have_f0 = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
    const double up = x[i] + h;
    const double down = x[i] - h;
    const bool up_ok = inside(i, up);
    const bool down_ok = inside(i, down);
    if (!up_ok && !down_ok) {
      throw std::domain_error("box too thin for a difference stencil on coordinate " +
                              std::to_string(i + 1));
    }
    if ((!up_ok || !down_ok) && !have_f0) {
      f0 = problem.objective(x);
      have_f0 = true;
    }
    double f_up = f0;
    double f_down = f0;
    double x_up = x[i];
    double x_down = x[i];
    if (up_ok) {
      probe[i] = up;
      f_up = problem.objective(probe);
      x_up = up;
    }
    if (down_ok) {
      probe[i] = down;
      f_down = problem.objective(probe);
      x_down = down;
    }
    probe[i] = x[i];
    g[i] = (f_up - f_down) / (x_up - x_down);
  }
  return g;
}

ChiResult chi(std::span<const double> gradient, std::span<const double> x, const Bounds& bounds) {
  const std::size_t n = x.size();
  if (gradient.size() != n || bounds.dim() != n) throw std::invalid_argument("dimension mismatch");

  // Step limits lo <= w <= hi with lo <= 0 <= hi; thin coordinates are frozen.
  Vector lo(n), hi(n), c(n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool thin = bounds.upper(i) - bounds.lower(i) < kThinBox;
    lo[i] = thin ? 0.0 : std::min(0.0, bounds.lower(i) - x[i]);
    hi[i] = thin ? 0.0 : std::max(0.0, bounds.upper(i) - x[i]);
    c[i] = -gradient[i];
    if (!thin) scale = std::max(scale, std::abs(c[i]));
  }

  ChiResult result{0.0, Vector(n, 0.0), 0.0};
  if (scale == 0.0) return result;

  const auto dot = [&](const Vector& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += c[i] * w[i];
    return s;
  };

  // Ball inactive: the box corner in the direction of c already fits.
  Vector corner(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i] > 0.0) corner[i] = hi[i];
    if (c[i] < 0.0) corner[i] = lo[i];
  }
  if (norm(corner) <= 1.0) {
    result.value = dot(corner);
    result.omega = std::move(corner);
    return result;
  }

  // Ball active: w(mu) = clamp(c / (2 mu), lo, hi) with ||w(mu)|| = 1. The
  // search runs on c / max|c_i| so the maximizer is invariant to scaling of g.
  const auto step = [&](double mu) {
    Vector w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = std::clamp(c[i] / scale / (2.0 * mu), lo[i], hi[i]);
    return w;
  };
  double mu_lo = 1e-12;
  double mu_hi = std::sqrt(static_cast<double>(n)) + 1.0;
  for (int iter = 0; iter < 200 && mu_hi / mu_lo - 1.0 > 1e-14; ++iter) {
    const double mid = std::sqrt(mu_lo * mu_hi);
    if (norm(step(mid)) > 1.0) {
      mu_lo = mid;
    } else {
      mu_hi = mid;
    }
  }
  result.omega = step(mu_hi);
  result.value = std::max(0.0, dot(result.omega));
  result.multiplier = mu_hi * scale;
  return result;
}

double TheoremBoundInputs::rhs() const {
  if (!(lipschitz_L > 0.0) || !(grad_bound_gamma > 0.0) || n == 0 || !(delta > 0.0)) {
    throw UsageError("theorem bound inputs must all be positive");
  }
  return std::sqrt(static_cast<double>(n)) * (lipschitz_L + grad_bound_gamma) * delta;
}

}  // namespace nmps
