#pragma once

#include <Eigen/Core>

namespace ofuglb {

struct BallQpSolution {
  Eigen::VectorXd y;
  /// Multiplier of the ball constraint (0 when it is inactive).
  double multiplier = 0.0;
};

/// Exact minimiser of 0.5 y'Hy + b'y over ||y|| <= radius for symmetric
/// positive semidefinite H (tiny negative eigenvalues from rounding are
/// clipped). Uses an eigendecomposition and a safeguarded Newton iteration
/// on the secular equation 1/||y(rho)|| = 1/radius. Meant for small d.
BallQpSolution minimize_quadratic_on_ball(const Eigen::MatrixXd& H, const Eigen::VectorXd& b,
                                          double radius);

}  // namespace ofuglb
