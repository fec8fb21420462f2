#include "ofuglb/kappa.hpp"

#include <algorithm>
#include <stdexcept>

#include "ofuglb/geometry.hpp"

namespace ofuglb {

namespace {

double max_inverse_slope(const GlmFamily& family, const Eigen::ArrayXd& z) {
  return mu_dot(family, z).inverse().maxCoeff();
}

}  // namespace

KappaDiagnostics compute_kappas(const std::vector<RoundLog>& logs, const Environment& env) {
  if (logs.empty()) throw std::invalid_argument("compute_kappas: no rounds logged");
  const GlmFamily& family = env.family;
  const int d = env.space.dim;
  const double S = env.space.radius;
  const auto n = static_cast<Eigen::Index>(logs.size());

  Eigen::MatrixXd realized(2 * n, d);
  Eigen::ArrayXd z_star(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const RoundLog& log = logs[static_cast<std::size_t>(i)];
    realized.row(2 * i) = log.arm.transpose();
    realized.row(2 * i + 1) = log.optimal_arm.transpose();
    z_star[i] = log.optimal_arm.dot(env.theta_star);
  }

  KappaDiagnostics k;
  k.kappa_star_T = 1.0 / mu_dot(family, z_star).mean();
  const Eigen::ArrayXd z_realized = (realized * env.theta_star).array();
  k.kappa_X_T = max_inverse_slope(family, z_realized);

  if (d <= 3) {
    const std::vector<Eigen::VectorXd> dirs = sphere_directions(d, 1000);
    Eigen::MatrixXd grid(static_cast<Eigen::Index>(dirs.size()) + 1, d);
    for (std::size_t j = 0; j < dirs.size(); ++j) grid.row(static_cast<Eigen::Index>(j)) = S * dirs[j].transpose();
    grid.row(grid.rows() - 1) = env.theta_star.transpose();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < realized.rows(); ++i) {
      const Eigen::ArrayXd z = (grid * realized.row(i).transpose()).array();
      worst = std::max(worst, max_inverse_slope(family, z));
    }
    k.kappa_T = worst;
  } else {
    k.kappa_T = max_inverse_slope(family, Eigen::ArrayXd::LinSpaced(10001, -S, S));
  }
  k.kappa_T = std::max(k.kappa_T, k.kappa_X_T);
  return k;
}

}  // namespace ofuglb
