#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <utility>

namespace testing {

// 40-digit mpmath evaluations of the closed forms (S = 0.5 has no real C(S)).
inline constexpr std::pair<double, double> kPoissonSlope[] = {
    {1.0, 5.5318747445425857457},
    {2.0, 31.405820423667024073},
    {4.0, 451.69569301019232377},
};
inline constexpr std::pair<double, double> kPoissonSlopeSmall[] = {
    {0.5, 2.4829104442022153337},
    {1.0, 6.5059511767253791315},
    {2.0, 31.29949042279370074},
    {4.0, 442.38854721903650739},
};

/// Minimum of f over u in [lo, hi]: a uniform grid followed by golden-section
/// refinement around the best grid point.
inline double minimize_1d(const std::function<double(double)>& f, double lo, double hi, int n = 20001) {
  int best = 0;
  double best_v = f(lo);
  for (int i = 1; i < n; ++i) {
    const double v = f(lo + (hi - lo) * i / (n - 1));
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(0, best - 1) / (n - 1);
  double b = lo + (hi - lo) * std::min(n - 1, best + 1) / (n - 1);
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::min({best_v, fc, fd});
}

/// log(1/delta) + inf over c in (0, 1] of d log(1/c) + 2 S L c, searched in log c.
inline double radius_lr_oracle(int d, double S, double L, double delta) {
  const auto f = [&](double u) { return -d * u + 2 * S * L * std::exp(u); };
  return std::log(1 / delta) + minimize_1d(f, -40.0, 0.0);
}

/// log(pi^2 t^2 / (6 delta)) + inf over c in (0, 5S] of d log(5S/c) + c L.
inline double radius_discrete_oracle(int d, double S, double L, std::size_t t, double delta) {
  const double top = std::log(5 * S);
  const auto f = [&](double u) { return d * (top - u) + L * std::exp(u); };
  const double tt = static_cast<double>(t);
  return std::log(std::numbers::pi * std::numbers::pi * tt * tt / (6 * delta)) + minimize_1d(f, top - 40.0, top);
}

}  // namespace testing
