#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "ofuglb/arms.hpp"
#include "ofuglb/confidence_set.hpp"
#include "ofuglb/history.hpp"
#include "ofuglb/mle.hpp"
#include "ofuglb/rng.hpp"
#include "ofuglb/ucb.hpp"

namespace ofuglb {

enum class Variant { OFUGLB, OFUGLB_e, EpsGreedy };

std::string_view to_string(Variant v);
std::optional<Variant> variant_from_string(std::string_view name);

struct PolicyConfig {
  Variant variant = Variant::OFUGLB;
  double delta_total = 0.05;
  /// OFUGLB-e regulariser; unset means 1 / (8 S^2 (1 + S R_s)).
  std::optional<double> lambda;
  /// Exploration probability of EpsGreedy.
  double epsilon = 0.05;
  MleSolverConfig mle;
  UcbLrConfig ucb;
  /// OFUGLB: skip the LR maximisation for arms whose ellipsoid upper bound
  /// cannot beat the best value found so far.
  bool prune_arms = true;
};

struct RoundLog {
  std::size_t t = 0;
  std::size_t arm_index = 0;
  Eigen::VectorXd arm;
  double reward = 0.0;
  double ucb_value = 0.0;
  /// beta^2 of the round's set; gamma for OFUGLB-e.
  double radius_sq = 0.0;
  double inst_regret = 0.0;
  double cum_regret = 0.0;
  bool theta_star_contained = false;
  int mle_iterations = 0;
  /// Some arm's LR maximisation fell back to <x, theta_hat> this round.
  bool fallback = false;
  double feasibility_residual = 0.0;
  std::size_t optimal_index = 0;
  Eigen::VectorXd optimal_arm;
};

using ConfidenceSet = std::variant<LRConfidenceSet, EllipsoidConfidenceSet>;

struct PolicyRun {
  std::vector<RoundLog> logs;
  History history;
  /// The set used at round T (before its reward was observed).
  std::optional<ConfidenceSet> final_set;
};

/// Confidence and Lipschitz budgets for one round: a stochastic Lipschitz
/// bound takes half of delta_total, a deterministic one takes nothing.
struct DeltaSplit {
  double delta_cs = 0.0;
  double delta_L = 0.0;
};
DeltaSplit split_delta(const GlmFamily& family, double delta_total);

/// Runs T rounds. `arms` supplies each round's arm set and `rng` drives rewards
/// and EpsGreedy exploration. Errors are rethrown as std::runtime_error whose
/// message starts with "round t:".
PolicyRun run_policy(const Environment& env, ArmSetGenerator& arms, std::size_t T,
                     const PolicyConfig& cfg, Rng& rng);

}  // namespace ofuglb
