#include "ofuglb/arms.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "ofuglb/geometry.hpp"

namespace ofuglb {

std::string_view to_string(ArmSetMode mode) {
  switch (mode) {
    case ArmSetMode::FixedUniform:
      return "FixedUniform";
    case ArmSetMode::VaryingUniform:
      return "VaryingUniform";
    case ArmSetMode::Explicit:
      return "Explicit";
  }
  return "?";
}

std::optional<ArmSetMode> arm_set_mode_from_string(std::string_view name) {
  if (name == "FixedUniform") return ArmSetMode::FixedUniform;
  if (name == "VaryingUniform") return ArmSetMode::VaryingUniform;
  if (name == "Explicit") return ArmSetMode::Explicit;
  return std::nullopt;
}

ArmSetGenerator::ArmSetGenerator(ArmSetLaw law, int dim, std::uint64_t seed)
    : law_(std::move(law)), dim_(dim), rng_(seed) {
  if (dim < 1) throw std::invalid_argument("arm dimension must be positive");
  if (law_.mode == ArmSetMode::Explicit) {
    if (law_.arms.empty()) throw std::invalid_argument("explicit arm set is empty");
    for (const auto& a : law_.arms) {
      if (a.size() != dim) throw std::invalid_argument("explicit arm has wrong dimension");
      if (!(a.norm() <= 1.0 + 1e-12)) throw std::invalid_argument("explicit arm outside unit ball");
    }
  } else if (law_.K < 1) {
    throw std::invalid_argument("arm set size K must be >= 1");
  }
}

std::vector<Eigen::VectorXd> ArmSetGenerator::draw() { return gen_arm_set(law_, dim_, rng_); }

std::vector<Eigen::VectorXd> ArmSetGenerator::arms_for_round(std::size_t /*t*/) {
  switch (law_.mode) {
    case ArmSetMode::Explicit:
      return law_.arms;
    case ArmSetMode::FixedUniform:
      if (fixed_.empty()) fixed_ = draw();
      return fixed_;
    case ArmSetMode::VaryingUniform:
      return draw();
  }
  return {};
}

std::vector<Eigen::VectorXd> gen_arm_set(const ArmSetLaw& law, int dim, Rng& rng) {
  if (law.mode == ArmSetMode::Explicit) return law.arms;
  if (law.K < 1) throw std::invalid_argument("arm set size K must be >= 1");
  std::vector<Eigen::VectorXd> arms;
  arms.reserve(static_cast<std::size_t>(law.K));
  for (int k = 0; k < law.K; ++k) arms.push_back(sample_unit_ball(dim, rng));
  return arms;
}

Environment::Environment(GlmFamily f, Eigen::VectorXd theta, ParameterSpace s)
    : family(std::move(f)), theta_star(std::move(theta)), space(s) {
  if (theta_star.size() != space.dim) throw std::invalid_argument("theta_star has wrong dimension");
  if (!space.contains(theta_star, 1e-12)) throw std::invalid_argument("theta_star lies outside Theta");
}

Eigen::VectorXd experiment_theta_star(double S, int d) {
  return Eigen::VectorXd::Constant(d, (S - 1.0) / std::sqrt(static_cast<double>(d)));
}

OptimalArm optimal_arm(const std::vector<Eigen::VectorXd>& arms,
                       const Eigen::VectorXd& theta_star, const GlmFamily& family) {
  if (arms.empty()) throw std::invalid_argument("optimal_arm: empty arm set");
  // mu is nondecreasing, so the linear score decides.
  std::size_t best = 0;
  double best_score = arms[0].dot(theta_star);
  for (std::size_t i = 1; i < arms.size(); ++i) {
    const double score = arms[i].dot(theta_star);
    if (score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return {best, mu(family, best_score)};
}

}  // namespace ofuglb
