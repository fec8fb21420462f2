#pragma once

#include <cstddef>

#include "ofuglb/family.hpp"
#include "ofuglb/history.hpp"

namespace ofuglb {

/// Upper bound on the Lipschitz constant of the cumulative loss at round t.
/// Stochastic bounds hold simultaneously for all t with probability
/// 1 - delta_share.
struct LipschitzBound {
  double value = 0.0;
  bool stochastic = false;
  double delta_share = 0.0;
};

/// (M + 2 S R_mu_dot)(t - 1) / g. Holds almost surely when |r - mu| <= M.
LipschitzBound lipschitz_bounded(double M, double S, double r_mu_dot, std::size_t t,
                                 double g_tau);

/// (2/g)(R_mu_dot S (t-1) + 2 pi sigma sqrt((t-1) log(pi^2 d t^2 / (3 delta_L)))).
LipschitzBound lipschitz_subgaussian(double sigma, double S, double r_mu_dot, std::size_t t,
                                     int d, double delta_L, double g_tau);

/// Slope constant of the Poisson bound for S > 1. Throws std::domain_error when
/// 1 - 2e^{-S} <= 0, where the closed form has no real value.
double poisson_slope(double S);
/// Slope constant of the Poisson bound for S <= 1.
double poisson_slope_small(double S);

/// Poisson bound; branch chosen on S > 1.
LipschitzBound lipschitz_poisson(double S, std::size_t t, int d, double delta_L);

/// The bound matching `family`: deterministic for Bernoulli and generic
/// bounded families, stochastic with share `delta_L` otherwise.
LipschitzBound lipschitz_for_family(const GlmFamily& family, const ParameterSpace& space,
                                    std::size_t t, double delta_L);

/// Grid estimate of max over Theta of ||grad L||; a test oracle for d <= 3.
/// Evaluates a grid_n^d lattice clipped to the ball plus a set of points on
/// the sphere of radius S. Throws std::invalid_argument for d > 3.
double lipschitz_empirical(const History& history, const GlmFamily& family,
                           const ParameterSpace& space, int grid_n);

}  // namespace ofuglb
