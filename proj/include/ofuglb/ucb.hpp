#pragma once

#include <Eigen/Core>

#include "ofuglb/confidence_set.hpp"

namespace ofuglb {

/// <x, center> + sqrt(gamma) ||x||_{shape^{-1}}, via the stored Cholesky factor.
double ucb_ellipsoid(const Eigen::VectorXd& arm, const EllipsoidConfidenceSet& set);

struct UcbLrConfig {
  /// Number of barrier weights, geometrically spaced from the initial to the
  /// final weight.
  int outer_steps = 20;
  /// Final barrier weight relative to S ||x||; it bounds the suboptimality of
  /// the returned value.
  double final_weight = 1e-9;
  int max_newton_steps = 50;
};

struct UcbLrResult {
  double value = 0.0;
  Eigen::VectorXd theta;
  /// max(0, L(theta) - L(center) - radius_sq) at the returned point.
  double feasibility_residual = 0.0;
  int newton_steps = 0;
  /// Solver broke down; value is <x, center>, which is still attained in the set.
  bool fallback = false;
};

/// max <x, theta> over the LR set. A log-barrier on the loss constraint keeps
/// iterates strictly feasible; each Newton step minimises the barrier model
/// exactly over the ball, so the norm constraint is never violated. The
/// returned value is never below <x, center>.
UcbLrResult ucb_lr(const Eigen::VectorXd& arm, const LRConfidenceSet& set,
                   const UcbLrConfig& cfg = {});

}  // namespace ofuglb
