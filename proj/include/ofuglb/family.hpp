#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "ofuglb/rng.hpp"

namespace ofuglb {

enum class FamilyKind { Bernoulli, Gaussian, Poisson, GenericBounded };

std::string_view to_string(FamilyKind kind);

/// Parses "Bernoulli", "Gaussian", "Poisson" or "GenericBounded".
std::optional<FamilyKind> family_kind_from_string(std::string_view name);

/// Callables describing a user-supplied bounded GLM. `log_partition` is m,
/// `mu` = m', `mu_dot` = m'', `mu_ddot` = m'''. `sample` draws a reward given
/// the natural parameter.
struct CustomLink {
  std::function<double(double)> log_partition;
  std::function<double(double)> mu;
  std::function<double(double)> mu_dot;
  std::function<double(double)> mu_ddot;
  std::function<double(double, Rng&)> sample;
};

/// An exponential-family observation model r ~ exp((r z - m(z)) / g(tau)) with
/// natural parameter z = <x, theta>. Immutable once built; use the factories.
class GlmFamily {
 public:
  static GlmFamily bernoulli();
  static GlmFamily gaussian(double sigma = 1.0);
  static GlmFamily poisson();
  /// `bound_m` bounds |r - mu(z)| almost surely; `self_concordance` is R_s.
  static GlmFamily generic_bounded(CustomLink link, double bound_m, double self_concordance,
                                   double dispersion = 1.0);

  FamilyKind kind() const { return kind_; }
  double dispersion() const { return dispersion_; }
  double self_concordance() const { return self_concordance_; }
  std::optional<double> bound_m() const { return bound_m_; }
  std::optional<double> sigma() const { return sigma_; }
  const CustomLink* custom() const { return custom_ ? &*custom_ : nullptr; }

 private:
  GlmFamily() = default;

  FamilyKind kind_ = FamilyKind::Bernoulli;
  double dispersion_ = 1.0;
  double self_concordance_ = 1.0;
  std::optional<double> bound_m_;
  std::optional<double> sigma_;
  std::optional<CustomLink> custom_;
};

/// Theta = closed Euclidean ball of radius `radius` in R^dim.
struct ParameterSpace {
  int dim = 1;
  double radius = 1.0;

  ParameterSpace() = default;
  ParameterSpace(int d, double s);

  bool contains(const Eigen::VectorXd& theta, double tol = 1e-10) const;
};

double mu(const GlmFamily& family, double z);
double mu_dot(const GlmFamily& family, double z);
double mu_ddot(const GlmFamily& family, double z);
double log_partition(const GlmFamily& family, double z);

/// Largest slope of mu over |z| <= S.
double r_mu_dot(const GlmFamily& family, double S);

/// Exact draw from the family at natural parameter z. Throws
/// std::overflow_error for a Poisson mean that cannot be represented.
double sample_reward(const GlmFamily& family, double z, Rng& rng);

// Vectorised kernels used by the likelihood. Generic families fall back to a
// scalar loop over the user callables.
Eigen::ArrayXd log_partition(const GlmFamily& family, const Eigen::ArrayXd& z);
Eigen::ArrayXd mu(const GlmFamily& family, const Eigen::ArrayXd& z);
Eigen::ArrayXd mu_dot(const GlmFamily& family, const Eigen::ArrayXd& z);

}  // namespace ofuglb
