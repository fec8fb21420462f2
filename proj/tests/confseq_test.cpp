#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>

#include "ofuglb/arms.hpp"
#include "ofuglb/confidence_set.hpp"
#include "ofuglb/lipschitz.hpp"
#include "ofuglb/radius.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ofuglb;
using testing::simulate_history;

TEST_CASE("Lipschitz bound for bounded families") {
  const LipschitzBound b = lipschitz_bounded(1.0, 4.0, 0.25, 101, 1.0);
  CHECK(b.value == doctest::Approx(300.0).epsilon(1e-15));
  CHECK_FALSE(b.stochastic);
  CHECK(b.delta_share == 0.0);
  CHECK(lipschitz_bounded(1.0, 4.0, 0.25, 1, 1.0).value == 0.0);
  CHECK(lipschitz_bounded(2.0, 1.0, 1.0, 11, 2.0).value == doctest::Approx(20.0).epsilon(1e-15));
  // Bernoulli row: (1 + S/2)(t - 1).
  const LipschitzBound fam =
      lipschitz_for_family(GlmFamily::bernoulli(), ParameterSpace(2, 10.0), 51, 0.05);
  CHECK(fam.value == doctest::Approx(6.0 * 50).epsilon(1e-15));
}

TEST_CASE("sub-Gaussian Lipschitz bound") {
  CHECK(lipschitz_subgaussian(1.0, 1.0, 1.0, 1, 1, 0.05, 1.0).value == 0.0);
  const LipschitzBound b = lipschitz_subgaussian(1.0, 1.0, 1.0, 2, 1, 0.05, 1.0);
  CHECK(b.value == doctest::Approx(31.665350270998391923).epsilon(1e-13));
  CHECK(b.stochastic);
  CHECK(b.delta_share == 0.05);
  CHECK(lipschitz_subgaussian(1.0, 1.0, 1.0, 100, 2, 0.05, 1.0).value >
        lipschitz_subgaussian(1.0, 1.0, 1.0, 50, 2, 0.05, 1.0).value);
}

TEST_CASE("Poisson constants and bound") {
  for (const auto& [S, C] : testing::kPoissonSlope) {
    CHECK(poisson_slope(S) == doctest::Approx(C).epsilon(1e-13));
  }
  for (const auto& [S, C] : testing::kPoissonSlopeSmall) {
    CHECK(poisson_slope_small(S) == doctest::Approx(C).epsilon(1e-13));
  }
  CHECK_THROWS_AS(poisson_slope(0.5), std::domain_error);

  const LipschitzBound b = lipschitz_poisson(2.0, 1, 1, 0.05);
  CHECK(b.value == doctest::Approx(13.381406845320979202).epsilon(1e-13));
  CHECK(b.stochastic);
  // Each branch against its own display.
  const double log_term = std::log(std::numbers::pi * std::numbers::pi * 3 * 100.0 / (3 * 0.05));
  CHECK(lipschitz_poisson(2.0, 10, 2, 0.05).value ==
        doctest::Approx(poisson_slope(2.0) * 9 + 2.0 / (1 - 2 * std::exp(-2.0)) * log_term).epsilon(1e-13));
  CHECK(lipschitz_poisson(0.5, 10, 2, 0.05).value ==
        doctest::Approx(poisson_slope_small(0.5) * 9 + 4.0 * log_term).epsilon(1e-13));
}

TEST_CASE("empirical Lipschitz oracle") {
  const ParameterSpace space(2, 4.0);
  CHECK(lipschitz_empirical(History(2), GlmFamily::bernoulli(), space, 11) == 0.0);
  CHECK_THROWS_AS(lipschitz_empirical(History(4), GlmFamily::bernoulli(), ParameterSpace(4, 1.0), 11),
                  std::invalid_argument);
  Rng rng(6);
  for (int rep = 0; rep < 20; ++rep) {
    const History h = simulate_history(GlmFamily::bernoulli(), Eigen::Vector2d(2, -2), 20, rng);
    const double emp = lipschitz_empirical(h, GlmFamily::bernoulli(), space, 21);
    CHECK(emp <= lipschitz_for_family(GlmFamily::bernoulli(), space, 21, 0.0).value);
  }
}

TEST_CASE("radius_lr") {
  CHECK(radius_lr(2, 4.0, 0.0, 0.05) == doctest::Approx(2.9957322735539909934).epsilon(1e-15));
  CHECK(radius_lr(2, 4.0, 0.25, 0.05) == doctest::Approx(4.9957322735539909934).epsilon(1e-15));
  CHECK(std::abs(radius_lr(2, 4.0, 0.25, 0.05) - testing::radius_lr_oracle(2, 4.0, 0.25, 0.05)) <= 1e-8);
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const int d = 1 + static_cast<int>(uniform01(rng) * 10);
    const double S = 0.1 + 20 * uniform01(rng);
    const double L = std::pow(10.0, -3 + 7 * uniform01(rng));
    const double delta = 0.001 + 0.5 * uniform01(rng);
    const double r = radius_lr(d, S, L, delta);
    CHECK(std::abs(r - testing::radius_lr_oracle(d, S, L, delta)) <= 1e-8);
    CHECK(r <= radius_lr_relaxed(d, S, L, delta) + 1e-12);
    CHECK(r >= std::log(1.0 / delta));
  }
  CHECK_THROWS_AS(radius_lr(2, 4.0, -1.0, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(radius_lr(2, 4.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("radius_discrete") {
  CHECK(radius_discrete(2, 4.0, 0.0, 1, 0.05) == doctest::Approx(3.4934325760247363409).epsilon(1e-15));
  CHECK(radius_discrete(1, 1.0, 1.0, 1, 0.05) == doctest::Approx(6.1028704884588367155).epsilon(1e-15));
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const int d = 1 + static_cast<int>(uniform01(rng) * 10);
    const double S = 0.1 + 20 * uniform01(rng);
    const double L = std::pow(10.0, -3 + 7 * uniform01(rng));
    const std::size_t t = 1 + static_cast<std::size_t>(uniform01(rng) * 1000);
    const double r = radius_discrete(d, S, L, t, 0.05);
    CHECK(std::abs(r - testing::radius_discrete_oracle(d, S, L, t, 0.05)) <= 1e-8);
    CHECK(r <= radius_discrete_relaxed(d, S, L, t, 0.05) + 1e-12);
  }
}

TEST_CASE("gamma and default lambda") {
  CHECK(gamma_ellipsoid(4.0, 1.0, 1.0 / 64, 5.0) == doctest::Approx(60.0).epsilon(1e-15));
  CHECK(gamma_ellipsoid(4.0, 0.0, 0.0, 7.0) == 14.0);
  CHECK(gamma_ellipsoid(4.0, 1.0, 0.1, 5.0) < gamma_ellipsoid(4.0, 1.0, 0.2, 5.0));
  CHECK(gamma_ellipsoid(4.0, 1.0, 0.1, 5.0) < gamma_ellipsoid(4.0, 1.0, 0.1, 6.0));
  CHECK(gamma_ellipsoid(4.0, 1.0, 0.1, 5.0) < gamma_ellipsoid(4.0, 2.0, 0.1, 5.0));
  CHECK(default_lambda(4.0, 1.0) == doctest::Approx(1.0 / (8 * 16 * 5)).epsilon(1e-15));
  CHECK(default_lambda(4.0, 0.0) == doctest::Approx(1.0 / 128).epsilon(1e-15));
}

TEST_CASE("LR set on an empty history is the whole ball") {
  const GlmFamily f = GlmFamily::bernoulli();
  const ParameterSpace space(2, 4.0);
  const LRConfidenceSet set =
      build_lr_set(History(2), f, space, lipschitz_for_family(f, space, 1, 0.0), 0.05);
  CHECK(set.center.isZero());
  CHECK(set.radius_sq == doctest::Approx(std::log(20.0)));
  Rng rng(1);
  for (int i = 0; i < 200; ++i) CHECK(lr_contains(set, testing::random_in_ball(2, 4.0, rng)));
  CHECK(lr_contains(set, Eigen::Vector2d(4.0, 0.0)));
  CHECK_FALSE(lr_contains(set, Eigen::Vector2d(4.0, 0.1)));
}

TEST_CASE("LR set contains the truth on a seeded run") {
  const GlmFamily f = GlmFamily::bernoulli();
  const ParameterSpace space(2, 4.0);
  const Eigen::Vector2d star = experiment_theta_star(4.0, 2);
  Rng rng(2024);
  const History h = simulate_history(f, star, 500, rng);
  const LRConfidenceSet set = build_lr_set(h, f, space, lipschitz_for_family(f, space, 501, 0.0), 0.1);
  CHECK(lr_contains(set, star));
  CHECK(lr_contains(set, set.center));
  CHECK(set.radius_sq >= std::log(10.0));
}

TEST_CASE("radius grows logarithmically for Bernoulli") {
  const GlmFamily f = GlmFamily::bernoulli();
  const ParameterSpace space(2, 4.0);
  const double small = radius_lr(2, 4.0, lipschitz_for_family(f, space, 100, 0.0).value, 0.05);
  const double large = radius_lr(2, 4.0, lipschitz_for_family(f, space, 10000, 0.0).value, 0.05);
  CHECK(large <= small + 2 * std::log(9999.0 / 99.0) + 1e-9);
  CHECK(large > small);
}

TEST_CASE("LR containment flips at the bisected boundary") {
  const GlmFamily f = GlmFamily::bernoulli();
  const ParameterSpace space(2, 4.0);
  Rng rng(77);
  const History h = simulate_history(f, Eigen::Vector2d(1.0, 0.5), 100, rng);
  const LRConfidenceSet set = build_lr_set(h, f, space, lipschitz_for_family(f, space, 101, 0.0), 0.05);
  for (int k = 0; k < 8; ++k) {
    const double a = 2 * std::numbers::pi * k / 8;
    const Eigen::Vector2d u(std::cos(a), std::sin(a));
    double lo = 0.0, hi = 8.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (lr_excess(set, set.center + mid * u) <= set.radius_sq ? lo : hi) = mid;
    }
    const Eigen::VectorXd inner = set.center + std::max(0.0, lo - 1e-6) * u;
    const Eigen::VectorXd outer = set.center + (hi + 1e-6) * u;
    if (inner.norm() <= 4.0) CHECK(lr_contains(set, inner));
    CHECK_FALSE(lr_contains(set, outer));
  }
}

TEST_CASE("ellipsoid set") {
  const GlmFamily f = GlmFamily::bernoulli();
  const ParameterSpace space(2, 4.0);
  const EllipsoidConfidenceSet empty =
      build_ellipsoid_set(History(2), f, space, lipschitz_for_family(f, space, 1, 0.0), 0.05, 1.0);
  CHECK(empty.shape.isApprox(Eigen::Matrix2d::Identity()));
  CHECK(empty.center.isZero());
  CHECK(ellipsoid_contains(empty, Eigen::Vector2d(std::sqrt(empty.gamma), 0.0)));
  CHECK_FALSE(ellipsoid_contains(empty, Eigen::Vector2d(std::sqrt(empty.gamma) + 1e-6, 0.0)));
  CHECK_THROWS_AS(build_ellipsoid_set(History(2), f, space, LipschitzBound{}, 0.05, 0.0), std::invalid_argument);

  Rng rng(3);
  const History h = simulate_history(f, Eigen::Vector2d(2.0, 1.0), 200, rng);
  const double lambda = default_lambda(4.0, 1.0);
  const EllipsoidConfidenceSet set =
      build_ellipsoid_set(h, f, space, lipschitz_for_family(f, space, 201, 0.0), 0.05, lambda);
  CHECK(ellipsoid_contains(set, set.center));
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd v = testing::random_in_ball(2, 1.0, rng);
    if (v.norm() < 1e-3) continue;
    v *= std::sqrt(2 * set.gamma / v.dot(set.shape * v));
    CHECK_FALSE(ellipsoid_contains(set, set.center + v));
    const Eigen::VectorXd theta = set.center + 0.3 * v;
    const Eigen::LLT<Eigen::MatrixXd> llt(set.shape);
    const double via_chol = (llt.matrixU() * (theta - set.center)).squaredNorm();
    CHECK(std::abs(via_chol - ellipsoid_distance_sq(set, theta)) <= 1e-10 * via_chol);
  }
}

TEST_CASE("LR set is nested in the ellipsoid set") {
  const GlmFamily families[] = {GlmFamily::bernoulli(), GlmFamily::poisson(), GlmFamily::gaussian(1.0)};
  Rng rng(55);
  for (const GlmFamily& f : families) {
    const double S = f.kind() == FamilyKind::Poisson ? 1.5 : 4.0;
    const ParameterSpace space(2, S);
    for (int rep = 0; rep < 5; ++rep) {
      const std::size_t t = 10 + 40 * rep;
      const History h = simulate_history(f, testing::random_in_ball(2, S, rng), t, rng);
      const LipschitzBound L = lipschitz_for_family(f, space, t + 1, 0.025);
      const double delta_cs = L.stochastic ? 0.025 : 0.05;
      const LRConfidenceSet lr = build_lr_set(h, f, space, L, delta_cs);
      for (const double lambda : {default_lambda(S, f.self_concordance()), 1.0, 10.0}) {
        const EllipsoidConfidenceSet e = make_ellipsoid_set(
            h, f, space, MleResult{.theta_hat = lr.center, .loss_value = lr.center_loss}, L, delta_cs, lambda);
        int inside = 0;
        for (int i = 0; i < 400 && inside < 200; ++i) {
          const Eigen::VectorXd theta = testing::random_in_ball(2, S, rng);
          if (!lr_contains(lr, theta)) continue;
          ++inside;
          CHECK(ellipsoid_contains(e, theta));
        }
      }
    }
  }
}

TEST_CASE("contained grid fraction shrinks with more data") {
  const GlmFamily f = GlmFamily::bernoulli();
  const ParameterSpace space(2, 4.0);
  Rng rng(19);
  const History full = simulate_history(f, Eigen::Vector2d(2.0, -1.0), 300, rng);
  std::vector<Eigen::Vector2d> grid;
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) grid.emplace_back(-4.0 + 8.0 * (i + 0.5) / 100, -4.0 + 8.0 * (j + 0.5) / 100);
  }
  double previous = 1.0;
  for (const std::size_t t : {2, 3, 5, 8, 12, 20, 30, 50, 80, 120, 200, 300}) {
    const History h = full.prefix(t - 1);
    const LRConfidenceSet set = build_lr_set(h, f, space, lipschitz_for_family(f, space, t, 0.0), 0.05);
    int inside = 0;
    for (const auto& p : grid) inside += lr_contains(set, p) ? 1 : 0;
    const double frac = inside / 10000.0;
    CHECK(frac <= previous + 0.01);
    previous = frac;
  }
}

TEST_CASE("set documents round-trip through JSON") {
  const GlmFamily f = GlmFamily::poisson();
  const ParameterSpace space(2, 2.0);
  Rng rng(8);
  const History h = simulate_history(f, Eigen::Vector2d(0.5, 0.5), 40, rng);
  const LipschitzBound L = lipschitz_for_family(f, space, 41, 0.025);
  const LRConfidenceSet lr = build_lr_set(h, f, space, L, 0.025);
  const nlohmann::json doc = to_json(lr);
  for (const char* key : {"kind", "t", "delta", "center", "radius_sq", "schema_version"}) CHECK(doc.contains(key));
  CHECK(doc["delta"].get<double>() == doctest::Approx(0.05));
  const LRConfidenceSet back = lr_set_from_json(nlohmann::json::parse(doc.dump()));
  CHECK(back.center == lr.center);
  CHECK(back.radius_sq == lr.radius_sq);
  CHECK(back.history.size() == h.size());
  CHECK(lr_excess(back, Eigen::Vector2d(1.0, 0.0)) == lr_excess(lr, Eigen::Vector2d(1.0, 0.0)));

  const EllipsoidConfidenceSet e = build_ellipsoid_set(h, f, space, L, 0.025, 0.1);
  const nlohmann::json edoc = to_json(e);
  for (const char* key : {"kind", "t", "delta", "lambda", "center", "shape", "gamma"}) CHECK(edoc.contains(key));
  const EllipsoidConfidenceSet eback = ellipsoid_set_from_json(nlohmann::json::parse(edoc.dump()));
  CHECK(eback.shape == e.shape);
  CHECK(eback.gamma == e.gamma);
  CHECK_THROWS(ellipsoid_set_from_json(doc));
}
