#include "ofuglb/confidence_set.hpp"

#include <sstream>
#include <utility>

#include "ofuglb/likelihood.hpp"
#include "ofuglb/radius.hpp"

namespace ofuglb {

using nlohmann::json;

namespace {

std::string describe_failure(const MleResult& r) {
  std::ostringstream msg;
  msg << "constrained MLE did not converge after " << r.iterations
      << " iterations (projected-gradient residual " << r.optimality_gap << ")";
  return msg.str();
}

void check_deltas(double delta_cs, const LipschitzBound& L_t) {
  if (!(delta_cs > 0.0 && delta_cs < 1.0)) throw std::invalid_argument("delta_cs must lie in (0,1)");
  if (!(delta_cs + L_t.delta_share < 1.0)) {
    throw std::invalid_argument("delta_cs + delta_L must be below 1");
  }
}

json vector_to_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.begin(), v.end())); }

Eigen::VectorXd vector_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void expect_kind(const json& doc, const char* kind) {
  if (!doc.contains("kind") || doc.at("kind") != kind) {
    throw std::invalid_argument(std::string("set document is not of kind '") + kind + "'");
  }
}

}  // namespace

MleNotConverged::MleNotConverged(MleResult result)
    : std::runtime_error(describe_failure(result)), result_(std::move(result)) {}

LRConfidenceSet make_lr_set(const History& history, const GlmFamily& family,
                            const ParameterSpace& space, const MleResult& mle,
                            const LipschitzBound& L_t, double delta_cs) {
  check_deltas(delta_cs, L_t);
  return LRConfidenceSet{
      .center = mle.theta_hat,
      .center_loss = mle.loss_value,
      .radius_sq = radius_lr(space.dim, space.radius, L_t.value, delta_cs),
      .history = history,
      .family = family,
      .space = space,
      .lipschitz = L_t,
      .delta_cs = delta_cs,
  };
}

LRConfidenceSet build_lr_set(const History& history, const GlmFamily& family,
                             const ParameterSpace& space, const LipschitzBound& L_t,
                             double delta_cs, const MleSolverConfig& cfg) {
  check_deltas(delta_cs, L_t);
  MleResult mle = constrained_mle(history, family, space, cfg);
  if (!mle.converged) throw MleNotConverged(std::move(mle));
  return make_lr_set(history, family, space, mle, L_t, delta_cs);
}

double lr_excess(const LRConfidenceSet& set, const Eigen::VectorXd& theta) {
  return neg_log_likelihood(theta, set.history, set.family) - set.center_loss;
}

bool lr_contains(const LRConfidenceSet& set, const Eigen::VectorXd& theta) {
  if (theta.size() != set.space.dim) return false;
  if (theta.norm() > set.space.radius + kContainmentTol) return false;
  return lr_excess(set, theta) <= set.radius_sq + kContainmentTol;
}

EllipsoidConfidenceSet make_ellipsoid_set(const History& history, const GlmFamily& family,
                                          const ParameterSpace& space, const MleResult& mle,
                                          const LipschitzBound& L_t, double delta_cs,
                                          double lambda) {
  check_deltas(delta_cs, L_t);
  if (!(lambda > 0.0)) throw std::invalid_argument("ellipsoid set needs lambda > 0");
  const int d = space.dim;
  EllipsoidConfidenceSet set;
  set.center = mle.theta_hat;
  set.shape = hessian_nll(mle.theta_hat, history, family) +
              lambda * Eigen::MatrixXd::Identity(d, d);
  set.factor.compute(set.shape);
  if (set.factor.info() != Eigen::Success) {
    throw std::runtime_error("ellipsoid shape is not positive definite");
  }
  set.radius_sq = radius_lr(d, space.radius, L_t.value, delta_cs);
  set.gamma = gamma_ellipsoid(space.radius, family.self_concordance(), lambda, set.radius_sq);
  set.lambda = lambda;
  set.delta_cs = delta_cs;
  set.delta_total = delta_cs + L_t.delta_share;
  set.t = history.round();
  set.S = space.radius;
  return set;
}

EllipsoidConfidenceSet build_ellipsoid_set(const History& history, const GlmFamily& family,
                                           const ParameterSpace& space,
                                           const LipschitzBound& L_t, double delta_cs,
                                           double lambda, const MleSolverConfig& cfg) {
  check_deltas(delta_cs, L_t);
  if (!(lambda > 0.0)) throw std::invalid_argument("ellipsoid set needs lambda > 0");
  MleResult mle = constrained_mle(history, family, space, cfg);
  if (!mle.converged) throw MleNotConverged(std::move(mle));
  return make_ellipsoid_set(history, family, space, mle, L_t, delta_cs, lambda);
}

double ellipsoid_distance_sq(const EllipsoidConfidenceSet& set, const Eigen::VectorXd& theta) {
  const Eigen::VectorXd diff = theta - set.center;
  return diff.dot(set.shape * diff);
}

bool ellipsoid_contains(const EllipsoidConfidenceSet& set, const Eigen::VectorXd& theta) {
  if (theta.size() != set.center.size()) return false;
  return ellipsoid_distance_sq(set, theta) <= set.gamma + kContainmentTol;
}

json family_to_json(const GlmFamily& family) {
  json j;
  j["kind"] = std::string(to_string(family.kind()));
  switch (family.kind()) {
    case FamilyKind::Gaussian:
      j["sigma"] = *family.sigma();
      break;
    case FamilyKind::GenericBounded:
      throw std::invalid_argument("GenericBounded families cannot be serialised");
    default:
      break;
  }
  return j;
}

GlmFamily family_from_json(const json& doc) {
  const auto kind = family_kind_from_string(doc.at("kind").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown family kind");
  switch (*kind) {
    case FamilyKind::Bernoulli:
      return GlmFamily::bernoulli();
    case FamilyKind::Gaussian:
      return GlmFamily::gaussian(doc.value("sigma", 1.0));
    case FamilyKind::Poisson:
      return GlmFamily::poisson();
    case FamilyKind::GenericBounded:
      break;
  }
  throw std::invalid_argument("GenericBounded families cannot be deserialised");
}

json to_json(const LRConfidenceSet& set) {
  json arms = json::array();
  const auto X = set.history.design();
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    arms.push_back(vector_to_json(X.row(i).transpose()));
  }
  json doc;
  doc["schema_version"] = kSetSchemaVersion;
  doc["kind"] = "lr";
  doc["t"] = set.round();
  doc["delta"] = set.delta_total();
  doc["delta_cs"] = set.delta_cs;
  doc["center"] = vector_to_json(set.center);
  doc["radius_sq"] = set.radius_sq;
  doc["center_loss"] = set.center_loss;
  doc["d"] = set.space.dim;
  doc["S"] = set.space.radius;
  doc["L_t"] = set.lipschitz.value;
  doc["family"] = family_to_json(set.family);
  doc["history"] = {{"arms", std::move(arms)},
                    {"rewards", vector_to_json(set.history.rewards())}};
  return doc;
}

json to_json(const EllipsoidConfidenceSet& set) {
  json shape = json::array();
  for (Eigen::Index i = 0; i < set.shape.rows(); ++i) {
    shape.push_back(vector_to_json(set.shape.row(i).transpose()));
  }
  json doc;
  doc["schema_version"] = kSetSchemaVersion;
  doc["kind"] = "ellipsoid";
  doc["t"] = set.t;
  doc["delta"] = set.delta_total;
  doc["delta_cs"] = set.delta_cs;
  doc["lambda"] = set.lambda;
  doc["center"] = vector_to_json(set.center);
  doc["shape"] = std::move(shape);
  doc["gamma"] = set.gamma;
  doc["radius_sq"] = set.radius_sq;
  doc["d"] = set.center.size();
  doc["S"] = set.S;
  return doc;
}

LRConfidenceSet lr_set_from_json(const json& doc) {
  expect_kind(doc, "lr");
  const Eigen::VectorXd center = vector_from_json(doc.at("center"));
  const int d = static_cast<int>(center.size());
  const ParameterSpace space(d, doc.at("S").get<double>());
  History history(d);
  if (doc.contains("history")) {
    const json& h = doc.at("history");
    const auto& arms = h.at("arms");
    const auto& rewards = h.at("rewards");
    if (arms.size() != rewards.size()) throw std::invalid_argument("history arms/rewards differ in length");
    for (std::size_t i = 0; i < arms.size(); ++i) {
      history.append(vector_from_json(arms[i]), rewards[i].get<double>());
    }
  }
  const GlmFamily family = family_from_json(doc.at("family"));
  const double delta = doc.at("delta").get<double>();
  LipschitzBound lip;
  lip.value = doc.value("L_t", 0.0);
  const double delta_cs = doc.value("delta_cs", delta);
  lip.delta_share = delta - delta_cs;
  lip.stochastic = lip.delta_share > 0.0;
  return LRConfidenceSet{
      .center = center,
      .center_loss = doc.value("center_loss", neg_log_likelihood(center, history, family)),
      .radius_sq = doc.at("radius_sq").get<double>(),
      .history = std::move(history),
      .family = family,
      .space = space,
      .lipschitz = lip,
      .delta_cs = delta_cs,
  };
}

EllipsoidConfidenceSet ellipsoid_set_from_json(const json& doc) {
  expect_kind(doc, "ellipsoid");
  EllipsoidConfidenceSet set;
  set.center = vector_from_json(doc.at("center"));
  const auto d = set.center.size();
  const json& rows = doc.at("shape");
  if (static_cast<Eigen::Index>(rows.size()) != d) throw std::invalid_argument("shape has wrong size");
  set.shape.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Eigen::VectorXd row = vector_from_json(rows[static_cast<std::size_t>(i)]);
    if (row.size() != d) throw std::invalid_argument("shape has wrong size");
    set.shape.row(i) = row.transpose();
  }
  set.factor.compute(set.shape);
  if (set.factor.info() != Eigen::Success) throw std::invalid_argument("shape is not positive definite");
  set.gamma = doc.at("gamma").get<double>();
  set.lambda = doc.at("lambda").get<double>();
  set.delta_total = doc.at("delta").get<double>();
  set.delta_cs = doc.value("delta_cs", set.delta_total);
  set.radius_sq = doc.value("radius_sq", 0.0);
  set.t = doc.at("t").get<std::size_t>();
  set.S = doc.value("S", 1.0);
  return set;
}

}  // namespace ofuglb
