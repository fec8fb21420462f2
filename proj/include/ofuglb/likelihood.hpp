#pragma once

#include <Eigen/Core>

#include "ofuglb/family.hpp"
#include "ofuglb/history.hpp"

namespace ofuglb {

/// Value and (optionally) first/second derivatives of the cumulative negative
/// log-likelihood L(theta) = sum_s (-r_s <x_s,theta> + m(<x_s,theta>)) / g(tau).
struct LossDerivatives {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

enum class Order { Value = 0, Gradient = 1, Hessian = 2 };

/// One pass over the history computing everything up to `order`.
LossDerivatives evaluate_nll(const Eigen::VectorXd& theta, const History& history,
                             const GlmFamily& family, Order order);

double neg_log_likelihood(const Eigen::VectorXd& theta, const History& history,
                          const GlmFamily& family);
Eigen::VectorXd grad_nll(const Eigen::VectorXd& theta, const History& history,
                         const GlmFamily& family);
Eigen::MatrixXd hessian_nll(const Eigen::VectorXd& theta, const History& history,
                            const GlmFamily& family);

}  // namespace ofuglb
