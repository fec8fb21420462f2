#include "ofuglb/ball_qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace ofuglb {

BallQpSolution minimize_quadratic_on_ball(const Eigen::MatrixXd& H, const Eigen::VectorXd& b,
                                          double radius) {
  const Eigen::Index d = b.size();
  if (H.rows() != d || H.cols() != d) throw std::invalid_argument("ball QP: shape mismatch");
  if (!(radius > 0.0)) throw std::invalid_argument("ball QP: radius must be positive");

  BallQpSolution out;
  const double b_norm = b.norm();
  if (b_norm == 0.0) {
    out.y = Eigen::VectorXd::Zero(d);
    return out;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H);
  if (eig.info() != Eigen::Success) throw std::runtime_error("ball QP: eigensolver failed");
  const Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(0.0);
  const Eigen::MatrixXd& Q = eig.eigenvectors();
  const Eigen::VectorXd bt = Q.transpose() * b;
  const double lam_max = lam.maxCoeff();
  const double lam_min = lam.minCoeff();
  const double null_tol = 1e-14 * std::max(1.0, lam_max);
  const double tiny_b = 1e-14 * b_norm;

  // Unconstrained minimiser (pseudo-inverse) when it exists and fits.
  bool bounded = true;
  Eigen::VectorXd yt(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (lam[i] <= null_tol) {
      if (std::abs(bt[i]) > tiny_b) bounded = false;
      yt[i] = 0.0;
    } else {
      yt[i] = -bt[i] / lam[i];
    }
  }
  if (bounded && yt.norm() <= radius) {
    out.y = Q * yt;
    return out;
  }

  auto norm_at = [&](double rho, double* slope) {
    double sq = 0.0;
    double cube = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      const double denom = lam[i] + rho;
      if (denom <= 0.0) {
        if (std::abs(bt[i]) > tiny_b) return std::numeric_limits<double>::infinity();
        continue;
      }
      const double c = bt[i] / denom;
      sq += c * c;
      cube += c * c / denom;
    }
    if (slope != nullptr) *slope = cube;
    return std::sqrt(sq);
  };

  double lo = std::max(0.0, b_norm / radius - lam_max);
  double hi = std::max(lo, b_norm / radius - lam_min);
  double rho = lo;
  for (int it = 0; it < 200; ++it) {
    double cube = 0.0;
    const double n = norm_at(rho, &cube);
    if (std::isfinite(n) && std::abs(n - radius) <= 1e-13 * radius) break;
    if (n > radius) {
      lo = rho;
    } else {
      hi = rho;
    }
    double next = std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(n) && n > 0.0 && cube > 0.0) {
      // Newton on 1/||y(rho)|| - 1/radius, which is concave in rho.
      const double phi = 1.0 / n - 1.0 / radius;
      const double dphi = cube / (n * n * n);
      next = rho - phi / dphi;
    }
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 1e-16 * std::max(1.0, hi)) {
      rho = hi;
      break;
    }
    rho = next;
  }

  for (Eigen::Index i = 0; i < d; ++i) {
    const double denom = lam[i] + rho;
    yt[i] = denom > 0.0 ? -bt[i] / denom : 0.0;
  }
  Eigen::VectorXd y = Q * yt;
  const double n = y.norm();
  if (n > radius || (n > 0.0 && std::abs(n - radius) <= 1e-10 * radius)) y *= radius / n;
  out.y = std::move(y);
  out.multiplier = rho;
  return out;
}

}  // namespace ofuglb
