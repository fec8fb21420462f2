#include "ofuglb/policy.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "ofuglb/lipschitz.hpp"
#include "ofuglb/radius.hpp"

namespace ofuglb {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::OFUGLB:
      return "OFUGLB";
    case Variant::OFUGLB_e:
      return "OFUGLB-e";
    case Variant::EpsGreedy:
      return "EpsGreedy";
  }
  return "?";
}

std::optional<Variant> variant_from_string(std::string_view name) {
  if (name == "OFUGLB") return Variant::OFUGLB;
  if (name == "OFUGLB-e") return Variant::OFUGLB_e;
  if (name == "EpsGreedy") return Variant::EpsGreedy;
  return std::nullopt;
}

DeltaSplit split_delta(const GlmFamily& family, double delta_total) {
  if (!(delta_total > 0.0 && delta_total < 1.0)) {
    throw std::invalid_argument("delta_total must lie in (0,1)");
  }
  switch (family.kind()) {
    case FamilyKind::Bernoulli:
    case FamilyKind::GenericBounded:
      return {delta_total, 0.0};
    case FamilyKind::Gaussian:
    case FamilyKind::Poisson:
      break;
  }
  return {0.5 * delta_total, 0.5 * delta_total};
}

namespace {

constexpr double kPruneSlack = 1e-6;

std::size_t argmax(const std::vector<double>& scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

}  // namespace

PolicyRun run_policy(const Environment& env, ArmSetGenerator& arms, std::size_t T,
                     const PolicyConfig& cfg, Rng& rng) {
  if (T < 1) throw std::invalid_argument("run_policy: T must be >= 1");
  if (arms.dim() != env.space.dim) throw std::invalid_argument("run_policy: arm dimension mismatch");
  if (!(cfg.epsilon >= 0.0 && cfg.epsilon <= 1.0)) {
    throw std::invalid_argument("run_policy: epsilon must lie in [0,1]");
  }
  const GlmFamily& family = env.family;
  const ParameterSpace& space = env.space;
  const DeltaSplit split = split_delta(family, cfg.delta_total);
  const double lambda =
      cfg.lambda.value_or(default_lambda(space.radius, family.self_concordance()));

  PolicyRun run{.logs = {}, .history = History(space.dim), .final_set = std::nullopt};
  run.logs.reserve(T);
  MleSolverConfig mle_cfg = cfg.mle;
  double cum_regret = 0.0;

  for (std::size_t t = 1; t <= T; ++t) {
    try {
      RoundLog log;
      log.t = t;
      const std::vector<Eigen::VectorXd> arm_set = arms.arms_for_round(t);
      if (arm_set.empty()) throw std::runtime_error("empty arm set");

      const MleResult mle = constrained_mle(run.history, family, space, mle_cfg);
      if (!mle.converged) throw MleNotConverged(mle);
      mle_cfg.initial_point = mle.theta_hat;
      log.mle_iterations = mle.iterations;
      const LipschitzBound L_t = lipschitz_for_family(family, space, t, split.delta_L);

      std::vector<double> scores(arm_set.size());
      std::size_t choice = 0;
      if (cfg.variant == Variant::OFUGLB_e) {
        EllipsoidConfidenceSet set =
            make_ellipsoid_set(run.history, family, space, mle, L_t, split.delta_cs, lambda);
        for (std::size_t i = 0; i < arm_set.size(); ++i) scores[i] = ucb_ellipsoid(arm_set[i], set);
        choice = argmax(scores);
        log.ucb_value = scores[choice];
        log.radius_sq = set.gamma;
        log.theta_star_contained = ellipsoid_contains(set, env.theta_star);
        if (t == T) run.final_set = std::move(set);
      } else {
        LRConfidenceSet set = make_lr_set(run.history, family, space, mle, L_t, split.delta_cs);
        if (cfg.variant == Variant::OFUGLB) {
          // The LR set lies inside the ellipsoid built at the same radius, so
          // an arm whose ellipsoid bound is below the best LR value so far
          // cannot win.
          std::vector<double> upper(arm_set.size(), std::numeric_limits<double>::infinity());
          if (cfg.prune_arms && !run.history.empty()) {
            const EllipsoidConfidenceSet outer =
                make_ellipsoid_set(run.history, family, space, mle, L_t, split.delta_cs, lambda);
            for (std::size_t i = 0; i < arm_set.size(); ++i) {
              upper[i] = std::min(ucb_ellipsoid(arm_set[i], outer),
                                  space.radius * arm_set[i].norm());
            }
          }
          std::vector<std::size_t> order(arm_set.size());
          std::iota(order.begin(), order.end(), std::size_t{0});
          std::stable_sort(order.begin(), order.end(),
                           [&](std::size_t a, std::size_t b) { return upper[a] > upper[b]; });
          double best = -std::numeric_limits<double>::infinity();
          for (const std::size_t i : order) {
            if (upper[i] + kPruneSlack < best) break;
            const UcbLrResult r = ucb_lr(arm_set[i], set, cfg.ucb);
            log.fallback = log.fallback || r.fallback;
            log.feasibility_residual = std::max(log.feasibility_residual, r.feasibility_residual);
            if (r.value > best || (r.value == best && i < choice)) {
              best = r.value;
              choice = i;
            }
          }
          log.ucb_value = best;
        } else {
          for (std::size_t i = 0; i < arm_set.size(); ++i) scores[i] = arm_set[i].dot(mle.theta_hat);
          choice = argmax(scores);
          if (uniform01(rng) < cfg.epsilon) {
            choice = std::min(arm_set.size() - 1,
                              static_cast<std::size_t>(uniform01(rng) * arm_set.size()));
          }
          log.ucb_value = scores[choice];
        }
        log.radius_sq = set.radius_sq;
        log.theta_star_contained = lr_contains(set, env.theta_star);
        if (t == T) run.final_set = std::move(set);
      }

      const OptimalArm best = optimal_arm(arm_set, env.theta_star, family);
      const Eigen::VectorXd& x = arm_set[choice];
      const double z = x.dot(env.theta_star);
      log.arm_index = choice;
      log.arm = x;
      log.reward = sample_reward(family, z, rng);
      log.inst_regret = best.mean - mu(family, z);
      cum_regret += log.inst_regret;
      log.cum_regret = cum_regret;
      log.optimal_index = best.index;
      log.optimal_arm = arm_set[best.index];
      run.history.append(x, log.reward);
      run.logs.push_back(std::move(log));
    } catch (const std::exception& e) {
      throw std::runtime_error("round " + std::to_string(t) + ": " + e.what());
    }
  }
  return run;
}

}  // namespace ofuglb
