#include "ofuglb/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ofuglb {

std::vector<Eigen::VectorXd> sphere_directions(int d, int count) {
  using std::numbers::pi;
  if (d < 1 || d > 3) throw std::invalid_argument("sphere_directions supports d in [1, 3]");
  std::vector<Eigen::VectorXd> dirs;
  if (d == 1) {
    dirs.push_back(Eigen::VectorXd::Constant(1, 1.0));
    dirs.push_back(Eigen::VectorXd::Constant(1, -1.0));
  } else if (d == 2) {
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * pi * i / count;
      dirs.push_back(Eigen::Vector2d(std::cos(a), std::sin(a)));
    }
  } else {
    const double golden = pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double rho = std::sqrt(1.0 - z * z);
      const double a = golden * i;
      dirs.push_back(Eigen::Vector3d(rho * std::cos(a), rho * std::sin(a), z));
    }
  }
  return dirs;
}

Eigen::VectorXd sample_unit_ball(int d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(d);
  double norm = 0.0;
  do {
    for (int i = 0; i < d; ++i) v[i] = normal(rng);
    norm = v.norm();
  } while (norm == 0.0);
  const double radius = std::pow(uniform01(rng), 1.0 / d);
  v *= radius / norm;
  return v;
}

}  // namespace ofuglb
