#pragma once

#include <vector>

#include <Eigen/Core>

#include "ofuglb/rng.hpp"

namespace ofuglb {

/// Deterministic points spread over the unit sphere for d <= 3: {+1, -1} in
/// one dimension, equally spaced angles in two, a Fibonacci lattice in three.
std::vector<Eigen::VectorXd> sphere_directions(int d, int count);

/// Uniform draw from the closed unit ball: a Gaussian direction scaled by
/// U^{1/d}.
Eigen::VectorXd sample_unit_ball(int d, Rng& rng);

}  // namespace ofuglb
