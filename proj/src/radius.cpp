#include "ofuglb/radius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ofuglb {

namespace {

void check_common(int d, double S, double L, double delta) {
  if (d < 1) throw std::invalid_argument("radius: d must be positive");
  if (!(S > 0.0)) throw std::invalid_argument("radius: S must be positive");
  if (!(L >= 0.0) || !std::isfinite(L)) throw std::invalid_argument("radius: L must be >= 0");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("radius: delta must lie in (0,1)");
}

double basel_term(std::size_t t, double delta) {
  if (t < 1) throw std::invalid_argument("radius: t must be >= 1");
  const double tt = static_cast<double>(t);
  return std::log(std::numbers::pi * std::numbers::pi * tt * tt / (6.0 * delta));
}

}  // namespace

double radius_lr(int d, double S, double L, double delta) {
  check_common(d, S, L, delta);
  const double slope = 2.0 * S * L;
  const double dd = static_cast<double>(d);
  // Past the kink the infimum is d log(2eSL/d), the relaxed bound itself.
  const double inf_term = slope <= dd ? slope : dd * std::log(std::numbers::e * slope / dd);
  return std::log(1.0 / delta) + inf_term;
}

double radius_lr_relaxed(int d, double S, double L, double delta) {
  check_common(d, S, L, delta);
  const double dd = static_cast<double>(d);
  const double arg = std::max(std::numbers::e, std::numbers::e * (2.0 * S * L) / dd);
  return std::log(1.0 / delta) + dd * std::log(arg);
}

double radius_discrete(int d, double S, double L, std::size_t t, double delta) {
  check_common(d, S, L, delta);
  const double dd = static_cast<double>(d);
  double inf_term = 0.0;
  if (L > 0.0) {
    const double c = std::min(5.0 * S, dd / L);
    inf_term = dd * std::log(5.0 * S / c) + c * L;
  }
  return basel_term(t, delta) + inf_term;
}

double radius_discrete_relaxed(int d, double S, double L, std::size_t t, double delta) {
  check_common(d, S, L, delta);
  return basel_term(t, delta) + d * std::log(std::max(1.0, 5.0 * S * L)) + 1.0;
}

double gamma_ellipsoid(double S, double R_s, double lambda, double beta_sq) {
  if (!(S > 0.0 && R_s >= 0.0 && lambda >= 0.0 && beta_sq > 0.0)) {
    throw std::invalid_argument("gamma_ellipsoid: bad arguments");
  }
  return 2.0 * (1.0 + S * R_s) * (4.0 * S * S * lambda + beta_sq);
}

double default_lambda(double S, double R_s) {
  if (!(S > 0.0 && R_s >= 0.0)) throw std::invalid_argument("default_lambda: bad arguments");
  return 1.0 / (8.0 * S * S * (1.0 + S * R_s));
}

}  // namespace ofuglb
