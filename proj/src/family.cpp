#include "ofuglb/family.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ofuglb {

namespace {

// Largest Poisson mean we hand to the sampler; counts are int64.
constexpr double kMaxPoissonMean = 4.0e18;

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

const CustomLink& require_custom(const GlmFamily& family) {
  const CustomLink* link = family.custom();
  if (link == nullptr) throw std::logic_error("GenericBounded family without callables");
  return *link;
}

template <typename F>
Eigen::ArrayXd map_scalar(const Eigen::ArrayXd& z, const F& f) {
  Eigen::ArrayXd out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) out[i] = f(z[i]);
  return out;
}

}  // namespace

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Bernoulli:
      return "Bernoulli";
    case FamilyKind::Gaussian:
      return "Gaussian";
    case FamilyKind::Poisson:
      return "Poisson";
    case FamilyKind::GenericBounded:
      return "GenericBounded";
  }
  return "?";
}

std::optional<FamilyKind> family_kind_from_string(std::string_view name) {
  if (name == "Bernoulli") return FamilyKind::Bernoulli;
  if (name == "Gaussian") return FamilyKind::Gaussian;
  if (name == "Poisson") return FamilyKind::Poisson;
  if (name == "GenericBounded") return FamilyKind::GenericBounded;
  return std::nullopt;
}

GlmFamily GlmFamily::bernoulli() {
  GlmFamily f;
  f.kind_ = FamilyKind::Bernoulli;
  f.dispersion_ = 1.0;
  f.self_concordance_ = 1.0;
  f.bound_m_ = 1.0;
  return f;
}

GlmFamily GlmFamily::gaussian(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("Gaussian family needs sigma > 0");
  }
  GlmFamily f;
  f.kind_ = FamilyKind::Gaussian;
  f.dispersion_ = sigma * sigma;
  f.self_concordance_ = 0.0;
  f.sigma_ = sigma;
  return f;
}

GlmFamily GlmFamily::poisson() {
  GlmFamily f;
  f.kind_ = FamilyKind::Poisson;
  f.dispersion_ = 1.0;
  f.self_concordance_ = 1.0;
  return f;
}

GlmFamily GlmFamily::generic_bounded(CustomLink link, double bound_m, double self_concordance,
                                     double dispersion) {
  if (!link.log_partition || !link.mu || !link.mu_dot || !link.mu_ddot) {
    throw std::invalid_argument("GenericBounded family needs m, mu, mu_dot and mu_ddot");
  }
  if (!(bound_m > 0.0)) throw std::invalid_argument("GenericBounded family needs M > 0");
  if (!(self_concordance >= 0.0)) throw std::invalid_argument("R_s must be nonnegative");
  if (!(dispersion > 0.0)) throw std::invalid_argument("dispersion must be positive");
  GlmFamily f;
  f.kind_ = FamilyKind::GenericBounded;
  f.dispersion_ = dispersion;
  f.self_concordance_ = self_concordance;
  f.bound_m_ = bound_m;
  f.custom_ = std::move(link);
  return f;
}

ParameterSpace::ParameterSpace(int d, double s) : dim(d), radius(s) {
  if (d < 1) throw std::invalid_argument("parameter dimension must be positive");
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("radius S must be positive");
}

bool ParameterSpace::contains(const Eigen::VectorXd& theta, double tol) const {
  return theta.size() == dim && theta.norm() <= radius + tol;
}

double mu(const GlmFamily& family, double z) {
  switch (family.kind()) {
    case FamilyKind::Bernoulli:
      return sigmoid(z);
    case FamilyKind::Gaussian:
      return z;
    case FamilyKind::Poisson:
      return std::exp(z);
    case FamilyKind::GenericBounded:
      return require_custom(family).mu(z);
  }
  return 0.0;
}

double mu_dot(const GlmFamily& family, double z) {
  switch (family.kind()) {
    case FamilyKind::Bernoulli: {
      const double e = std::exp(-std::abs(z));
      return e / ((1.0 + e) * (1.0 + e));
    }
    case FamilyKind::Gaussian:
      return 1.0;
    case FamilyKind::Poisson:
      return std::exp(z);
    case FamilyKind::GenericBounded:
      return require_custom(family).mu_dot(z);
  }
  return 0.0;
}

double mu_ddot(const GlmFamily& family, double z) {
  switch (family.kind()) {
    case FamilyKind::Bernoulli:
      return mu_dot(family, z) * (1.0 - 2.0 * sigmoid(z));
    case FamilyKind::Gaussian:
      return 0.0;
    case FamilyKind::Poisson:
      return std::exp(z);
    case FamilyKind::GenericBounded:
      return require_custom(family).mu_ddot(z);
  }
  return 0.0;
}

double log_partition(const GlmFamily& family, double z) {
  switch (family.kind()) {
    case FamilyKind::Bernoulli:
      // log(1 + e^z) = max(z, 0) + log(1 + e^{-|z|})
      return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
    case FamilyKind::Gaussian:
      return 0.5 * z * z;
    case FamilyKind::Poisson:
      return std::exp(z);
    case FamilyKind::GenericBounded:
      return require_custom(family).log_partition(z);
  }
  return 0.0;
}

double r_mu_dot(const GlmFamily& family, double S) {
  if (!(S > 0.0)) throw std::invalid_argument("r_mu_dot needs S > 0");
  switch (family.kind()) {
    case FamilyKind::Bernoulli:
      return 0.25;
    case FamilyKind::Gaussian:
      return 1.0;
    case FamilyKind::Poisson:
      return std::exp(S);
    case FamilyKind::GenericBounded: {
      constexpr int kGrid = 10001;
      double best = 0.0;
      for (int i = 0; i < kGrid; ++i) {
        const double z = -S + 2.0 * S * i / (kGrid - 1);
        best = std::max(best, mu_dot(family, z));
      }
      return best;
    }
  }
  return 0.0;
}

double sample_reward(const GlmFamily& family, double z, Rng& rng) {
  switch (family.kind()) {
    case FamilyKind::Bernoulli:
      return uniform01(rng) < sigmoid(z) ? 1.0 : 0.0;
    case FamilyKind::Gaussian: {
      std::normal_distribution<double> noise(0.0, *family.sigma());
      return z + noise(rng);
    }
    case FamilyKind::Poisson: {
      const double mean = std::exp(z);
      if (!std::isfinite(mean) || mean > kMaxPoissonMean) {
        std::ostringstream msg;
        msg << "Poisson mean e^z overflows at z = " << z;
        throw std::overflow_error(msg.str());
      }
      std::poisson_distribution<std::int64_t> draw(mean);
      return static_cast<double>(draw(rng));
    }
    case FamilyKind::GenericBounded: {
      const CustomLink& link = require_custom(family);
      if (!link.sample) throw std::logic_error("GenericBounded family has no sampler");
      return link.sample(z, rng);
    }
  }
  return 0.0;
}

Eigen::ArrayXd log_partition(const GlmFamily& family, const Eigen::ArrayXd& z) {
  switch (family.kind()) {
    case FamilyKind::Bernoulli:
      return z.max(0.0) + (-z.abs()).exp().log1p();
    case FamilyKind::Gaussian:
      return 0.5 * z.square();
    case FamilyKind::Poisson:
      return z.exp();
    case FamilyKind::GenericBounded:
      return map_scalar(z, [&](double v) { return log_partition(family, v); });
  }
  return {};
}

Eigen::ArrayXd mu(const GlmFamily& family, const Eigen::ArrayXd& z) {
  switch (family.kind()) {
    case FamilyKind::Bernoulli: {
      const Eigen::ArrayXd e = (-z.abs()).exp();
      const Eigen::ArrayXd inv = 1.0 / (1.0 + e);
      return (z >= 0.0).select(inv, e * inv);
    }
    case FamilyKind::Gaussian:
      return z;
    case FamilyKind::Poisson:
      return z.exp();
    case FamilyKind::GenericBounded:
      return map_scalar(z, [&](double v) { return mu(family, v); });
  }
  return {};
}

Eigen::ArrayXd mu_dot(const GlmFamily& family, const Eigen::ArrayXd& z) {
  switch (family.kind()) {
    case FamilyKind::Bernoulli: {
      const Eigen::ArrayXd e = (-z.abs()).exp();
      return e / (1.0 + e).square();
    }
    case FamilyKind::Gaussian:
      return Eigen::ArrayXd::Ones(z.size());
    case FamilyKind::Poisson:
      return z.exp();
    case FamilyKind::GenericBounded:
      return map_scalar(z, [&](double v) { return mu_dot(family, v); });
  }
  return {};
}

}  // namespace ofuglb
