#pragma once

#include <cstddef>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <json.hpp>

#include "ofuglb/family.hpp"
#include "ofuglb/history.hpp"
#include "ofuglb/lipschitz.hpp"
#include "ofuglb/mle.hpp"

namespace ofuglb {

inline constexpr int kSetSchemaVersion = 1;
/// Absolute slack on every containment comparison; boundaries count as inside.
inline constexpr double kContainmentTol = 1e-9;

/// Thrown when a set cannot be centred because the MLE did not converge.
class MleNotConverged : public std::runtime_error {
 public:
  explicit MleNotConverged(MleResult result);
  const MleResult& result() const { return result_; }

 private:
  MleResult result_;
};

/// { theta in Theta : L_t(theta) - L_t(theta_hat) <= radius_sq }. Holds a copy
/// of the history it was built from, so it stays valid as the run goes on.
struct LRConfidenceSet {
  Eigen::VectorXd center;
  double center_loss = 0.0;
  double radius_sq = 0.0;
  History history;
  GlmFamily family;
  ParameterSpace space;
  LipschitzBound lipschitz;
  double delta_cs = 0.0;

  std::size_t round() const { return history.round(); }
  /// delta_cs plus whatever the Lipschitz bound consumed.
  double delta_total() const { return delta_cs + lipschitz.delta_share; }
};

/// { theta : ||theta - center||^2_shape <= gamma } with shape = Hessian + lambda I.
struct EllipsoidConfidenceSet {
  Eigen::VectorXd center;
  Eigen::MatrixXd shape;
  Eigen::LLT<Eigen::MatrixXd> factor;
  double gamma = 0.0;
  double lambda = 0.0;
  double radius_sq = 0.0;  // beta^2 the ellipsoid was inflated from
  double delta_cs = 0.0;
  double delta_total = 0.0;
  std::size_t t = 1;
  double S = 1.0;
};

/// Wraps an already solved MLE into an LR set. Throws std::invalid_argument
/// when delta_cs + L_t.delta_share >= 1.
LRConfidenceSet make_lr_set(const History& history, const GlmFamily& family,
                            const ParameterSpace& space, const MleResult& mle,
                            const LipschitzBound& L_t, double delta_cs);

/// Solves the MLE and wraps it. Throws MleNotConverged.
LRConfidenceSet build_lr_set(const History& history, const GlmFamily& family,
                             const ParameterSpace& space, const LipschitzBound& L_t,
                             double delta_cs, const MleSolverConfig& cfg = {});

bool lr_contains(const LRConfidenceSet& set, const Eigen::VectorXd& theta);

/// Loss excess L_t(theta) - L_t(center); the quantity compared to radius_sq.
double lr_excess(const LRConfidenceSet& set, const Eigen::VectorXd& theta);

/// Requires lambda > 0 so the shape is invertible.
EllipsoidConfidenceSet make_ellipsoid_set(const History& history, const GlmFamily& family,
                                          const ParameterSpace& space, const MleResult& mle,
                                          const LipschitzBound& L_t, double delta_cs,
                                          double lambda);

EllipsoidConfidenceSet build_ellipsoid_set(const History& history, const GlmFamily& family,
                                           const ParameterSpace& space,
                                           const LipschitzBound& L_t, double delta_cs,
                                           double lambda, const MleSolverConfig& cfg = {});

/// Squared distance ||theta - center||^2 in the shape norm.
double ellipsoid_distance_sq(const EllipsoidConfidenceSet& set, const Eigen::VectorXd& theta);
bool ellipsoid_contains(const EllipsoidConfidenceSet& set, const Eigen::VectorXd& theta);

// JSON documents consumed by the plotting CLI. LR sets carry their history so
// containment can be re-evaluated; generic families cannot be serialised.
nlohmann::json to_json(const LRConfidenceSet& set);
nlohmann::json to_json(const EllipsoidConfidenceSet& set);
LRConfidenceSet lr_set_from_json(const nlohmann::json& doc);
EllipsoidConfidenceSet ellipsoid_set_from_json(const nlohmann::json& doc);

nlohmann::json family_to_json(const GlmFamily& family);
GlmFamily family_from_json(const nlohmann::json& doc);

}  // namespace ofuglb
