#include "ofuglb/lipschitz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ofuglb/geometry.hpp"
#include "ofuglb/likelihood.hpp"

namespace ofuglb {

namespace {

using std::numbers::pi;

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta_L must lie in (0, 1)");
}

void check_round(std::size_t t) {
  if (t < 1) throw std::invalid_argument("round index t must be >= 1");
}

}  // namespace

LipschitzBound lipschitz_bounded(double M, double S, double r_mu_dot, std::size_t t,
                                 double g_tau) {
  check_round(t);
  if (!(M > 0.0 && S > 0.0 && r_mu_dot >= 0.0 && g_tau > 0.0)) {
    throw std::invalid_argument("lipschitz_bounded needs positive M, S, g and R_mu_dot >= 0");
  }
  LipschitzBound out;
  out.value = (M + 2.0 * S * r_mu_dot) * static_cast<double>(t - 1) / g_tau;
  return out;
}

LipschitzBound lipschitz_subgaussian(double sigma, double S, double r_mu_dot, std::size_t t,
                                     int d, double delta_L, double g_tau) {
  check_round(t);
  check_delta(delta_L);
  if (!(sigma > 0.0 && S > 0.0 && r_mu_dot >= 0.0 && g_tau > 0.0 && d >= 1)) {
    throw std::invalid_argument("lipschitz_subgaussian: bad arguments");
  }
  const double n = static_cast<double>(t - 1);
  const double tt = static_cast<double>(t);
  const double log_term = std::log(pi * pi * d * tt * tt / (3.0 * delta_L));
  LipschitzBound out;
  out.value = (2.0 / g_tau) * (r_mu_dot * S * n + 2.0 * pi * sigma * std::sqrt(n * log_term));
  out.stochastic = true;
  out.delta_share = delta_L;
  return out;
}

double poisson_slope(double S) {
  const double a = 1.0 - 2.0 * std::exp(-S);
  if (!(a > 0.0)) throw std::domain_error("poisson_slope needs 1 - 2e^{-S} > 0 (S > ln 2)");
  return 0.25 * a * (std::exp(S) + 2.0 * S + 2.0 * std::log(2.0 * a / std::numbers::e)) +
         2.0 * S * std::exp(S);
}

double poisson_slope_small(double S) {
  return (std::exp(S) + 4.0 * S + 4.0 * std::log(8.0 + 2.0 * std::exp(S))) / 16.0 +
         2.0 * S * std::exp(S);
}

LipschitzBound lipschitz_poisson(double S, std::size_t t, int d, double delta_L) {
  check_round(t);
  check_delta(delta_L);
  if (!(S > 0.0) || d < 1) throw std::invalid_argument("lipschitz_poisson: bad arguments");
  const double n = static_cast<double>(t - 1);
  const double tt = static_cast<double>(t);
  const double log_term = std::log(pi * pi * (d + 1) * tt * tt / (3.0 * delta_L));
  LipschitzBound out;
  if (S > 1.0) {
    out.value = poisson_slope(S) * n + 2.0 / (1.0 - 2.0 * std::exp(-S)) * log_term;
  } else {
    out.value = poisson_slope_small(S) * n + 4.0 * log_term;
  }
  out.stochastic = true;
  out.delta_share = delta_L;
  return out;
}

LipschitzBound lipschitz_for_family(const GlmFamily& family, const ParameterSpace& space,
                                    std::size_t t, double delta_L) {
  const double S = space.radius;
  switch (family.kind()) {
    case FamilyKind::Bernoulli:
    case FamilyKind::GenericBounded:
      return lipschitz_bounded(*family.bound_m(), S, r_mu_dot(family, S), t,
                               family.dispersion());
    case FamilyKind::Gaussian:
      return lipschitz_subgaussian(*family.sigma(), S, r_mu_dot(family, S), t, space.dim,
                                   delta_L, family.dispersion());
    case FamilyKind::Poisson:
      return lipschitz_poisson(S, t, space.dim, delta_L);
  }
  return {};
}

double lipschitz_empirical(const History& history, const GlmFamily& family,
                           const ParameterSpace& space, int grid_n) {
  const int d = space.dim;
  if (d > 3) throw std::invalid_argument("lipschitz_empirical supports d <= 3 only");
  if (grid_n < 2) throw std::invalid_argument("lipschitz_empirical needs grid_n >= 2");
  if (history.empty()) return 0.0;

  const double S = space.radius;
  double best = 0.0;
  auto visit = [&](const Eigen::VectorXd& theta) {
    best = std::max(best, grad_nll(theta, history, family).norm());
  };

  std::vector<int> idx(d, 0);
  Eigen::VectorXd theta(d);
  while (true) {
    for (int k = 0; k < d; ++k) theta[k] = -S + 2.0 * S * idx[k] / (grid_n - 1);
    if (theta.norm() <= S) visit(theta);
    int k = 0;
    while (k < d && ++idx[k] == grid_n) idx[k++] = 0;
    if (k == d) break;
  }
  const int boundary = d == 2 ? 8 * grid_n : 4 * grid_n * grid_n;
  for (const Eigen::VectorXd& u : sphere_directions(d, boundary)) visit(S * u);
  return best;
}

}  // namespace ofuglb
