#include "ofuglb/ucb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ofuglb/ball_qp.hpp"
#include "ofuglb/likelihood.hpp"

namespace ofuglb {

double ucb_ellipsoid(const Eigen::VectorXd& arm, const EllipsoidConfidenceSet& set) {
  if (arm.size() != set.center.size()) throw std::invalid_argument("ucb_ellipsoid: arm has wrong dimension");
  if (set.factor.info() != Eigen::Success) throw std::runtime_error("ucb_ellipsoid: singular shape");
  const Eigen::VectorXd w = set.factor.matrixL().solve(arm);
  return arm.dot(set.center) + std::sqrt(set.gamma) * w.norm();
}

namespace {

struct BarrierPoint {
  double slack = 0.0;  // c - L(theta)
  double value = 0.0;  // -<x,theta> - mu log(slack)
};

}  // namespace

UcbLrResult ucb_lr(const Eigen::VectorXd& arm, const LRConfidenceSet& set, const UcbLrConfig& cfg) {
  if (arm.size() != set.space.dim) throw std::invalid_argument("ucb_lr: arm has wrong dimension");
  if (cfg.outer_steps < 1) throw std::invalid_argument("ucb_lr: outer_steps must be >= 1");

  const double S = set.space.radius;
  const double center_value = arm.dot(set.center);
  UcbLrResult out;
  out.theta = set.center;
  out.value = center_value;
  const double x_norm = arm.norm();
  if (x_norm == 0.0) return out;

  const double cap = set.center_loss + set.radius_sq;
  const auto fall_back = [&] {
    out.theta = set.center;
    out.value = center_value;
    out.feasibility_residual = 0.0;
    out.fallback = true;
    return out;
  };
  if (!(set.radius_sq > 0.0) || !std::isfinite(cap)) return fall_back();

  const double scale = S * x_norm;
  const double mu_start = scale;
  const double mu_end = cfg.final_weight * std::max(1.0, scale);
  const double ratio =
      cfg.outer_steps > 1 ? std::pow(mu_end / mu_start, 1.0 / (cfg.outer_steps - 1)) : 1.0;

  auto evaluate = [&](const Eigen::VectorXd& theta, double weight) {
    const double loss = neg_log_likelihood(theta, set.history, set.family);
    BarrierPoint p;
    p.slack = cap - loss;
    p.value = p.slack > 0.0 ? -arm.dot(theta) - weight * std::log(p.slack)
                            : std::numeric_limits<double>::infinity();
    return p;
  };

  Eigen::VectorXd theta = set.center;
  double weight = cfg.outer_steps > 1 ? mu_start : mu_end;
  try {
    for (int outer = 0; outer < cfg.outer_steps; ++outer, weight *= ratio) {
      if (outer == cfg.outer_steps - 1) weight = mu_end;
      for (int step = 0; step < cfg.max_newton_steps; ++step) {
        const LossDerivatives ld = evaluate_nll(theta, set.history, set.family, Order::Hessian);
        const double slack = cap - ld.value;
        if (!(slack > 0.0) || !std::isfinite(slack)) return fall_back();
        const double current = -arm.dot(theta) - weight * std::log(slack);

        const Eigen::VectorXd grad = -arm + (weight / slack) * ld.gradient;
        Eigen::MatrixXd hess = (weight / slack) * ld.hessian;
        hess.noalias() += (weight / (slack * slack)) * ld.gradient * ld.gradient.transpose();
        hess = 0.5 * (hess + hess.transpose()).eval();

        // Minimise the quadratic model exactly over the ball.
        const BallQpSolution qp = minimize_quadratic_on_ball(hess, grad - hess * theta, S);
        const Eigen::VectorXd dir = qp.y - theta;
        const double slope = grad.dot(dir);
        ++out.newton_steps;
        if (!std::isfinite(slope)) return fall_back();
        const double tol = outer == cfg.outer_steps - 1 ? 1e-3 : 0.5;
        if (-slope <= tol * weight || dir.norm() <= 1e-14 * std::max(1.0, S)) break;

        double alpha = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
          const Eigen::VectorXd trial = theta + alpha * dir;
          const BarrierPoint p = evaluate(trial, weight);
          const double slack_floor = 1e-300;
          if (p.slack > slack_floor &&
              p.value <= current + 1e-4 * alpha * slope + 4e-16 * (1.0 + std::abs(current))) {
            theta = trial;
            moved = true;
            break;
          }
        }
        if (!moved) break;
      }
    }
  } catch (const std::exception&) {
    return fall_back();
  }

  if (!theta.allFinite()) return fall_back();
  const double excess = neg_log_likelihood(theta, set.history, set.family) - cap;
  const double value = arm.dot(theta);
  if (value > center_value) {
    out.theta = theta;
    out.value = value;
    out.feasibility_residual = std::max(0.0, excess);
  }
  return out;
}

}  // namespace ofuglb
