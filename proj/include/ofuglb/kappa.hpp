#pragma once

#include <vector>

#include "ofuglb/arms.hpp"
#include "ofuglb/policy.hpp"

namespace ofuglb {

struct KappaDiagnostics {
  /// Inverse of the average mu_dot at the per-round optimal arms.
  double kappa_star_T = 0.0;
  /// max of 1/mu_dot over realized arms and a grid of Theta.
  double kappa_T = 0.0;
  /// max of 1/mu_dot over realized arms at theta_star.
  double kappa_X_T = 0.0;
};

/// Realized arms are the pulled arms together with each round's optimal arm.
/// For d <= 3 the Theta grid is 1000 points on the sphere of radius S plus
/// theta_star; otherwise kappa_T is max 1/mu_dot over |z| <= S.
KappaDiagnostics compute_kappas(const std::vector<RoundLog>& logs, const Environment& env);

}  // namespace ofuglb
