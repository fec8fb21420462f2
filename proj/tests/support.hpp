#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "ofuglb/confidence_set.hpp"
#include "ofuglb/family.hpp"
#include "ofuglb/geometry.hpp"
#include "ofuglb/history.hpp"
#include "ofuglb/likelihood.hpp"
#include "ofuglb/rng.hpp"

namespace testing {

using namespace ofuglb;

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

/// t uniform arms with rewards drawn at theta_star.
inline History simulate_history(const GlmFamily& family, const Eigen::VectorXd& theta_star,
                                std::size_t n, Rng& rng) {
  const int d = static_cast<int>(theta_star.size());
  History h(d);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd x = sample_unit_ball(d, rng);
    h.append(x, sample_reward(family, x.dot(theta_star), rng));
  }
  return h;
}

inline Eigen::VectorXd random_in_ball(int d, double S, Rng& rng) { return S * sample_unit_ball(d, rng); }

/// Minimum of the loss over a square lattice of spacing h clipped to the ball
/// of radius S, plus the points of the boundary circle at angular spacing h/S.
struct GridMin {
  Eigen::Vector2d theta;
  double loss = std::numeric_limits<double>::infinity();
};

inline GridMin grid_min_2d(const History& h, const GlmFamily& family, double S, double step) {
  GridMin best;
  const int n = static_cast<int>(std::ceil(S / step));
  const auto visit = [&](const Eigen::Vector2d& p) {
    const double v = neg_log_likelihood(p, h, family);
    if (v < best.loss) {
      best.loss = v;
      best.theta = p;
    }
  };
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      const Eigen::Vector2d p(i * step, j * step);
      if (p.norm() <= S) visit(p);
    }
  }
  const int m = static_cast<int>(std::ceil(2.0 * 3.141592653589793 * S / step));
  for (int k = 0; k < m; ++k) {
    const double a = 2.0 * 3.141592653589793 * k / m;
    visit(Eigen::Vector2d(S * std::cos(a), S * std::sin(a)));
  }
  return best;
}

/// Distance from the centre to the set boundary along unit direction u, by
/// bisection on the segment that stays inside the ball.
inline double boundary_distance(const LRConfidenceSet& set, const Eigen::Vector2d& u) {
  const Eigen::Vector2d c = set.center;
  const double S = set.space.radius;
  const double cu = c.dot(u);
  double hi = -cu + std::sqrt(std::max(0.0, cu * cu - c.squaredNorm() + S * S));
  if (lr_excess(set, c + hi * u) <= set.radius_sq) return hi;
  double lo = 0.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (lr_excess(set, c + mid * u) <= set.radius_sq ? lo : hi) = mid;
  }
  return lo;
}

/// max <x, theta> over boundary points traced along `rays` directions, then
/// again on a finer fan around the best ray.
inline double lr_ray_oracle(const Eigen::Vector2d& x, const LRConfidenceSet& set, int rays = 4000) {
  const auto value_at = [&](double a) {
    const Eigen::Vector2d u(std::cos(a), std::sin(a));
    return x.dot(set.center + boundary_distance(set, u) * u);
  };
  const double h = 2 * std::numbers::pi / rays;
  double best = -1e300, best_a = 0.0;
  for (int k = 0; k < rays; ++k) {
    const double v = value_at(k * h);
    if (v > best) best = v, best_a = k * h;
  }
  for (int k = -1000; k <= 1000; ++k) best = std::max(best, value_at(best_a + k * h / 500));
  return best;
}

}  // namespace testing
