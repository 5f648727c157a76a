#include "mdplab/kl_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mdplab/errors.hpp"

namespace mdplab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kConstraintTolerance = 1e-10;
constexpr int kMaxRootIterations = 200;
// Components this small are treated as on the boundary of the simplex.
constexpr double kUnderflowFloor = 1e-300;

void check_pair(const ProbVector& p, std::span<const double> v,
                const char* where) {
  if (!p.strictly_positive()) {
    throw ValidationError(std::string(where) +
                          ": base point must be strictly positive");
  }
  if (static_cast<std::size_t>(p.size()) != v.size()) {
    throw ValidationError(std::string(where) + ": dimension mismatch");
  }
}

}  // namespace

double kl_divergence(const ProbVector& p, const ProbVector& q) {
  if (p.size() != q.size()) {
    throw ValidationError("kl_divergence: dimension mismatch");
  }
  double sum = 0.0;
  for (int y = 0; y < p.size(); ++y) {
    if (p[y] == 0.0) continue;  // 0 ln 0 convention
    if (q[y] < kUnderflowFloor) return kInf;
    sum += p[y] * std::log(p[y] / q[y]);
  }
  return std::max(sum, 0.0);
}

namespace {

// KL divergence from p_hat to the tilted point q(eps), where
// q_y(eps) ~ p_hat_y / (eps + vmax - v_y). Decreasing in eps: large eps means
// q near p_hat, eps -> 0 pushes q onto the argmax of v.
double tilt_kl(const ProbVector& p_hat, std::span<const double> v, double vmax,
               double eps) {
  double z = 0.0;
  double logs = 0.0;
  for (int y = 0; y < p_hat.size(); ++y) {
    const double denom = eps + (vmax - v[static_cast<std::size_t>(y)]);
    z += p_hat[y] / denom;
    logs += p_hat[y] * std::log(denom);
  }
  return std::log(z) + logs;
}

ProbVector tilt_point(const ProbVector& p_hat, std::span<const double> v,
                      double vmax, double eps) {
  std::vector<double> q(static_cast<std::size_t>(p_hat.size()));
  double z = 0.0;
  for (int y = 0; y < p_hat.size(); ++y) {
    q[static_cast<std::size_t>(y)] =
        p_hat[y] / (eps + (vmax - v[static_cast<std::size_t>(y)]));
    z += q[static_cast<std::size_t>(y)];
  }
  for (double& x : q) x /= z;
  return ProbVector::closure(std::move(q));
}

}  // namespace

UcbIndexResult ucb_index(const ProbVector& p_hat, std::span<const double> v,
                         double reward, double radius) {
  check_pair(p_hat, v, "ucb_index");
  if (radius < 0.0 || std::isnan(radius)) {
    throw ValidationError("ucb_index: radius must be >= 0");
  }

  const double vmax = *std::max_element(v.begin(), v.end());
  const double vmin = *std::min_element(v.begin(), v.end());
  const double base = reward + dot(p_hat, v);

  // Constant v: the objective is constant on the simplex.
  if (vmax - vmin <= 1e-14 * std::max(1.0, std::abs(vmax))) {
    return UcbIndexResult{base, p_hat};
  }
  if (radius == 0.0) {
    return UcbIndexResult{base, p_hat};
  }
  if (std::isinf(radius)) {
    // Unconstrained supremum: mass on the argmax of v (closure point).
    std::vector<double> q(static_cast<std::size_t>(p_hat.size()), 0.0);
    int ties = 0;
    for (std::size_t y = 0; y < v.size(); ++y) {
      if (v[y] >= vmax) ++ties;
    }
    for (std::size_t y = 0; y < v.size(); ++y) {
      if (v[y] >= vmax) q[y] = 1.0 / ties;
    }
    return UcbIndexResult{reward + vmax, ProbVector::closure(std::move(q))};
  }

  // Bracket eps with tilt_kl(lo) >= radius >= tilt_kl(hi).
  double lo = 1.0;
  double hi = 1.0;
  while (tilt_kl(p_hat, v, vmax, hi) > radius) {
    hi *= 4.0;
    if (hi > 1e160) {
      throw SolverError("ucb_index: no upper bracket for the tilt", radius);
    }
  }
  bool lo_bracketed = false;
  while (lo > kUnderflowFloor) {
    if (tilt_kl(p_hat, v, vmax, lo) >= radius) {
      lo_bracketed = true;
      break;
    }
    lo /= 4.0;
  }
  if (!lo_bracketed) {
    // The ball is so large the optimum sits at the boundary for any
    // representable tilt; return the near-boundary point, which is feasible.
    const ProbVector q = tilt_point(p_hat, v, vmax, lo);
    return UcbIndexResult{reward + dot(q, v), q};
  }

  double eps = hi;
  for (int iter = 0; iter < kMaxRootIterations; ++iter) {
    const double mid = std::sqrt(lo * hi);
    const double g = tilt_kl(p_hat, v, vmax, mid);
    if (std::abs(g - radius) <= kConstraintTolerance) {
      eps = mid;
      lo = mid;
      hi = mid;
      break;
    }
    if (g > radius) {
      lo = mid;
    } else {
      hi = mid;
    }
    eps = hi;  // feasible side
    if (hi - lo <= 1e-15 * hi) break;
  }
  const ProbVector q = tilt_point(p_hat, v, vmax, eps);
  const double value = reward + dot(q, v);
  return UcbIndexResult{std::clamp(value, base, reward + vmax), q};
}

double min_kl_above_threshold(const ProbVector& p, std::span<const double> v,
                              double threshold) {
  check_pair(p, v, "min_kl_above_threshold");

  const double mean = dot(p, v);
  if (mean >= threshold) return 0.0;

  const double vmax = *std::max_element(v.begin(), v.end());
  if (threshold >= vmax) return kInf;

  // G(lambda) = sum_y p_y (v_y - c) / (1 - lambda (v_y - c)); strictly
  // increasing from p.v - c < 0 to +inf as lambda approaches 1 / (vmax - c).
  const double lambda_max = 1.0 / (vmax - threshold);
  const auto g_of = [&](double lambda) {
    double g = 0.0;
    for (int y = 0; y < p.size(); ++y) {
      const double gap = v[static_cast<std::size_t>(y)] - threshold;
      g += p[y] * gap / (1.0 - lambda * gap);
    }
    return g;
  };

  double lo = 0.0;
  double hi = lambda_max * (1.0 - 1e-12);
  if (g_of(hi) < 0.0) {
    // Constraint unreachable within the representable dual range.
    hi = lambda_max * (1.0 - 1e-15);
  }
  double lambda = hi;
  for (int iter = 0; iter < kMaxRootIterations; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double g = g_of(mid);
    if (std::abs(g) <= kConstraintTolerance) {
      lambda = mid;
      break;
    }
    if (g < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    lambda = hi;  // constraint met from above
    if (hi - lo <= 1e-15 * lambda_max) break;
  }

  double divergence = 0.0;
  for (int y = 0; y < p.size(); ++y) {
    const double denom =
        1.0 - lambda * (v[static_cast<std::size_t>(y)] - threshold);
    if (denom < kUnderflowFloor) return kInf;
    divergence += p[y] * std::log(denom);
  }
  return std::max(divergence, 0.0);
}

}  // namespace mdplab
