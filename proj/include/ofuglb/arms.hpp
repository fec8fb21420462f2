#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ofuglb/family.hpp"
#include "ofuglb/rng.hpp"

namespace ofuglb {

enum class ArmSetMode { FixedUniform, VaryingUniform, Explicit };

std::string_view to_string(ArmSetMode mode);
std::optional<ArmSetMode> arm_set_mode_from_string(std::string_view name);

struct ArmSetLaw {
  ArmSetMode mode = ArmSetMode::VaryingUniform;
  int K = 20;
  /// Used by Explicit only.
  std::vector<Eigen::VectorXd> arms;
};

/// Produces the arm set shown at each round. FixedUniform draws K arms at the
/// first call and replays them; VaryingUniform draws a fresh set every round;
/// Explicit always returns the user list.
class ArmSetGenerator {
 public:
  ArmSetGenerator(ArmSetLaw law, int dim, std::uint64_t seed);

  std::vector<Eigen::VectorXd> arms_for_round(std::size_t t);

  const ArmSetLaw& law() const { return law_; }
  int dim() const { return dim_; }

 private:
  std::vector<Eigen::VectorXd> draw();

  ArmSetLaw law_;
  int dim_;
  Rng rng_;
  std::vector<Eigen::VectorXd> fixed_;
};

/// One-shot form of the generator for a caller-owned stream. FixedUniform is
/// treated like VaryingUniform since the caller owns the replay.
std::vector<Eigen::VectorXd> gen_arm_set(const ArmSetLaw& law, int dim, Rng& rng);

struct Environment {
  GlmFamily family;
  Eigen::VectorXd theta_star;
  ParameterSpace space;

  /// Throws std::invalid_argument when theta_star lies outside Theta.
  Environment(GlmFamily f, Eigen::VectorXd theta, ParameterSpace s);
};

/// ((S - 1) / sqrt(d)) * (1, ..., 1), the experimental ground truth.
Eigen::VectorXd experiment_theta_star(double S, int d);

struct OptimalArm {
  std::size_t index = 0;
  double mean = 0.0;
};

/// argmax_x mu(<x, theta_star>), ties to the lowest index. Throws on an empty
/// arm set.
OptimalArm optimal_arm(const std::vector<Eigen::VectorXd>& arms,
                       const Eigen::VectorXd& theta_star, const GlmFamily& family);

}  // namespace ofuglb
