#include "ofuglb/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ofuglb/ball_qp.hpp"
#include "ofuglb/likelihood.hpp"

namespace ofuglb {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-20;
constexpr double kMaxStep = 1e20;
constexpr int kMaxBacktracks = 60;
constexpr int kMaxPolishSteps = 30;

// Loss values are sums of many terms; comparisons between them cannot resolve
// differences below a few ulps of the magnitude.
double rounding_slack(double f) { return 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(f)); }

}  // namespace

Eigen::VectorXd project_to_ball(const Eigen::VectorXd& theta, double radius) {
  const double norm = theta.norm();
  if (norm <= radius) return theta;
  return theta * (radius / norm);
}

double projected_gradient_residual(const Eigen::VectorXd& theta, const Eigen::VectorXd& gradient,
                                   double radius) {
  const double norm = theta.norm();
  if (norm < radius * (1.0 - 1e-12)) return gradient.norm();
  const Eigen::VectorXd normal = theta / norm;
  const double outward = gradient.dot(normal);
  // -gradient points out of the ball: only its tangential part is admissible.
  if (outward < 0.0) return (gradient - outward * normal).norm();
  return gradient.norm();
}

double optimality_gap(const Eigen::VectorXd& theta, const History& history,
                      const GlmFamily& family, const ParameterSpace& space) {
  return projected_gradient_residual(theta, grad_nll(theta, history, family), space.radius);
}

MleResult constrained_mle(const History& history, const GlmFamily& family,
                          const ParameterSpace& space, const MleSolverConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("MLE tolerance must be positive");
  if (cfg.max_iters < 1) throw std::invalid_argument("MLE max_iters must be positive");
  if (history.dim() != space.dim) throw std::invalid_argument("history and space dimensions differ");

  const int d = space.dim;
  const double S = space.radius;
  MleResult result;

  if (history.empty()) {
    result.theta_hat = Eigen::VectorXd::Zero(d);
    result.converged = true;
    if (cfg.record_trace) result.loss_trace.push_back(0.0);
    return result;
  }

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d);
  if (cfg.initial_point.size() == d && cfg.initial_point.allFinite()) {
    theta = project_to_ball(cfg.initial_point, S);
  }

  LossDerivatives cur = evaluate_nll(theta, history, family, Order::Gradient);
  if (cfg.record_trace) result.loss_trace.push_back(cur.value);

  // Curvature scale of the loss is roughly n * R_mu_dot / g; start a bit below
  // its inverse and let Barzilai-Borwein take over.
  double step = family.dispersion() / (static_cast<double>(history.size()) *
                                       std::max(r_mu_dot(family, S), 1e-12));
  step = std::clamp(step, kMinStep, kMaxStep);

  double gap = projected_gradient_residual(theta, cur.gradient, S);
  int iter = 0;
  while (gap > cfg.tol && iter < cfg.max_iters) {
    ++iter;
    bool accepted = false;
    Eigen::VectorXd next;
    LossDerivatives trial;
    double eta = step;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      next = project_to_ball(theta - eta * cur.gradient, S);
      const Eigen::VectorXd move = next - theta;
      if (move.squaredNorm() == 0.0) break;
      trial = evaluate_nll(next, history, family, Order::Gradient);
      if (std::isfinite(trial.value) &&
          trial.value <= cur.value + kArmijo * cur.gradient.dot(move) + rounding_slack(cur.value)) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;

    const Eigen::VectorXd s = next - theta;
    const Eigen::VectorXd y = trial.gradient - cur.gradient;
    const double sy = s.dot(y);
    step = sy > 0.0 ? s.squaredNorm() / sy : 2.0 * eta;
    step = std::clamp(step, kMinStep, kMaxStep);

    theta = std::move(next);
    cur = std::move(trial);
    if (cfg.record_trace) result.loss_trace.push_back(cur.value);
    gap = projected_gradient_residual(theta, cur.gradient, S);
  }

  // Newton polish over the ball, accepted on the residual.
  for (int k = 0; gap > cfg.tol && k < kMaxPolishSteps && iter < cfg.max_iters; ++k) {
    const LossDerivatives full = evaluate_nll(theta, history, family, Order::Hessian);
    const Eigen::VectorXd next =
        minimize_quadratic_on_ball(full.hessian, full.gradient - full.hessian * theta, S).y;
    LossDerivatives trial = evaluate_nll(next, history, family, Order::Gradient);
    const double trial_gap = projected_gradient_residual(next, trial.gradient, S);
    if (!std::isfinite(trial.value) || !(trial_gap < gap) ||
        trial.value > cur.value + 16.0 * rounding_slack(cur.value)) {
      break;
    }
    ++iter;
    theta = next;
    cur = std::move(trial);
    if (cfg.record_trace) result.loss_trace.push_back(cur.value);
    gap = trial_gap;
  }

  result.theta_hat = std::move(theta);
  result.loss_value = cur.value;
  result.optimality_gap = gap;
  result.iterations = iter;
  result.converged = gap <= cfg.tol;
  return result;
}

}  // namespace ofuglb
