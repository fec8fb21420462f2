#pragma once

#include <vector>

#include <Eigen/Core>

#include "ofuglb/family.hpp"
#include "ofuglb/history.hpp"

namespace ofuglb {

struct MleSolverConfig {
  /// Stop once the projected-gradient residual drops to this value.
  double tol = 1e-8;
  int max_iters = 10000;
  /// Starting point; empty means the origin. Projected onto Theta if needed.
  Eigen::VectorXd initial_point;
  /// Keep the per-iteration loss values in MleResult::loss_trace.
  bool record_trace = false;
};

struct MleResult {
  Eigen::VectorXd theta_hat;
  double loss_value = 0.0;
  double optimality_gap = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> loss_trace;
};

/// theta * min(1, S / ||theta||).
Eigen::VectorXd project_to_ball(const Eigen::VectorXd& theta, double radius);

/// First-order stationarity measure of `gradient` at `theta` over the ball:
/// the norm of the projection of -gradient onto the tangent cone of Theta.
/// This is the small-step limit of ||theta - P(theta - eta g)|| / eta, which
/// upper bounds the residual at every finite eta.
double projected_gradient_residual(const Eigen::VectorXd& theta, const Eigen::VectorXd& gradient,
                                   double radius);

double optimality_gap(const Eigen::VectorXd& theta, const History& history,
                      const GlmFamily& family, const ParameterSpace& space);

/// argmin over the ball of the negative log-likelihood, by projected gradient
/// descent with Barzilai-Borwein trial steps and Armijo backtracking. An empty
/// history yields theta_hat = 0. Non-convergence is reported through
/// `converged`, never thrown.
MleResult constrained_mle(const History& history, const GlmFamily& family,
                          const ParameterSpace& space, const MleSolverConfig& cfg = {});

}  // namespace ofuglb
