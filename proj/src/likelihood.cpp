#include "ofuglb/likelihood.hpp"

#include <stdexcept>

namespace ofuglb {

LossDerivatives evaluate_nll(const Eigen::VectorXd& theta, const History& history,
                             const GlmFamily& family, Order order) {
  const int d = history.dim();
  if (theta.size() != d) throw std::invalid_argument("theta dimension does not match history");

  LossDerivatives out;
  if (order >= Order::Gradient) out.gradient = Eigen::VectorXd::Zero(d);
  if (order >= Order::Hessian) out.hessian = Eigen::MatrixXd::Zero(d, d);
  if (history.empty()) return out;

  const auto X = history.design();
  const auto r = history.rewards();
  const double inv_g = 1.0 / family.dispersion();

  const Eigen::ArrayXd z = (X * theta).array();
  if (family.kind() == FamilyKind::Bernoulli) {
    // Share exp(-|z|) between m, mu and mu_dot.
    const Eigen::ArrayXd e = (-z.abs()).exp();
    out.value = (z.max(0.0) + (1.0 + e).log() - r.array() * z).sum() * inv_g;
    if (order == Order::Value) return out;
    const Eigen::ArrayXd inv = 1.0 / (1.0 + e);
    const Eigen::ArrayXd m1 = (z >= 0.0).select(inv, e * inv);
    out.gradient.noalias() = X.transpose() * ((m1 - r.array()) * inv_g).matrix();
    if (order == Order::Gradient) return out;
    const Eigen::ArrayXd w = e * inv.square() * inv_g;
    out.hessian.noalias() = X.transpose() * (X.array().colwise() * w).matrix();
    out.hessian = 0.5 * (out.hessian + out.hessian.transpose()).eval();
    return out;
  }
  out.value = (log_partition(family, z) - r.array() * z).sum() * inv_g;

  if (order >= Order::Gradient) {
    const Eigen::VectorXd residual = ((mu(family, z) - r.array()) * inv_g).matrix();
    out.gradient.noalias() = X.transpose() * residual;
  }
  if (order >= Order::Hessian) {
    const Eigen::ArrayXd w = mu_dot(family, z) * inv_g;
    const Eigen::MatrixXd weighted = X.array().colwise() * w;
    out.hessian.noalias() = X.transpose() * weighted;
    out.hessian = 0.5 * (out.hessian + out.hessian.transpose()).eval();
  }
  return out;
}

double neg_log_likelihood(const Eigen::VectorXd& theta, const History& history,
                          const GlmFamily& family) {
  return evaluate_nll(theta, history, family, Order::Value).value;
}

Eigen::VectorXd grad_nll(const Eigen::VectorXd& theta, const History& history,
                         const GlmFamily& family) {
  return evaluate_nll(theta, history, family, Order::Gradient).gradient;
}

Eigen::MatrixXd hessian_nll(const Eigen::VectorXd& theta, const History& history,
                            const GlmFamily& family) {
  return evaluate_nll(theta, history, family, Order::Hessian).hessian;
}

}  // namespace ofuglb
