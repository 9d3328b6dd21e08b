#include <cmath>

#include <gtest/gtest.h>

#include "h2sw/error.hpp"
#include "h2sw/projections.hpp"
#include "h2sw/sliced.hpp"
#include "h2sw/synthetic.hpp"

namespace h2sw {
namespace {

const std::vector<SpaceSpec> kR3S2{SpaceSpec::euclidean(3), SpaceSpec::sphere(3)};

EstimatorConfig h2sw_config(std::size_t L, std::uint64_t seed, double p = 2.0) {
  EstimatorConfig cfg;
  cfg.family = Family::H2SW;
  cfg.gs = {Linear{}, Circular{1.0}};
  cfg.L = L;
  cfg.p = p;
  cfg.seed = seed;
  return cfg;
}

TEST(Family, ParseRoundTrip) {
  for (auto f : {Family::SW, Family::GSW, Family::H2SW, Family::CHSW}) EXPECT_EQ(parse_family(to_string(f)), f);
  EXPECT_THROW(parse_family("max-sw"), ConfigError);
}

TEST(Validate, RejectsBadConfigurations) {
  auto cfg = h2sw_config(0, 1);
  EXPECT_THROW(validate(cfg, kR3S2), ConfigError);
  cfg = h2sw_config(10, 1, 0.5);
  EXPECT_THROW(validate(cfg, kR3S2), ConfigError);
  cfg = h2sw_config(10, 1);
  cfg.gs.pop_back();
  EXPECT_THROW(validate(cfg, kR3S2), ConfigError);
  cfg = h2sw_config(10, 1);
  cfg.family = Family::CHSW;
  EXPECT_THROW(validate(cfg, kR3S2), ConfigError);
  cfg.fixed_psi = std::vector<double>{1.0, 1.0};
  EXPECT_THROW(validate(cfg, kR3S2), ConfigError);
  cfg.fixed_psi = equal_psi(2);
  EXPECT_NO_THROW(validate(cfg, kR3S2));
}

TEST(H2sw, IdenticalCloudsGiveExactlyZero) {
  const auto mu = synthetic::random_cloud(kR3S2, 30, 1);
  EXPECT_EQ(h2sw_estimate(mu, mu, h2sw_config(50, 3)), 0.0);
}

TEST(H2sw, SymmetricUnderASharedSeed) {
  const auto mu = synthetic::random_cloud(kR3S2, 30, 1), nu = synthetic::random_cloud(kR3S2, 20, 2, true);
  const auto cfg = h2sw_config(64, 9);
  EXPECT_EQ(h2sw_estimate(mu, nu, cfg), h2sw_estimate(nu, mu, cfg));
}

TEST(H2sw, DeterministicAcrossThreadCounts) {
  const auto mu = synthetic::random_cloud(kR3S2, 40, 1), nu = synthetic::random_cloud(kR3S2, 40, 2);
  auto cfg = h2sw_config(97, 4);
  const double serial = h2sw_estimate(mu, nu, cfg);
  const auto serial_grad = h2sw_gradient(mu, nu, cfg);
  cfg.threads = 4;
  EXPECT_EQ(h2sw_estimate(mu, nu, cfg), serial);
  const auto parallel_grad = h2sw_gradient(mu, nu, cfg);
  for (std::size_t k = 0; k < serial_grad.size(); ++k) EXPECT_EQ(parallel_grad[k].data, serial_grad[k].data);
}

TEST(H2sw, SingleSupportLinearLinearMatchesDirectAlgebra) {
  const std::vector<SpaceSpec> specs{SpaceSpec::euclidean(3), SpaceSpec::euclidean(2)};
  const auto mu = synthetic::random_cloud(specs, 1, 5), nu = synthetic::random_cloud(specs, 1, 6);
  EstimatorConfig cfg;
  cfg.gs = {Linear{}, Linear{}};
  cfg.L = 40;
  cfg.seed = 12;
  const auto costs = per_direction_costs(mu, nu, cfg);
  double mean = 0;
  for (std::size_t l = 0; l < cfg.L; ++l) {
    const auto dir = slice_direction(cfg, specs, l);
    double t = 0;
    for (std::size_t k = 0; k < 2; ++k) {
      double delta = 0;
      for (std::size_t c = 0; c < specs[k].dim; ++c)
        delta += (mu.block(k)(0, c) - nu.block(k)(0, c)) * dir.thetas[k][c];
      t += dir.psi[k] * delta;
    }
    EXPECT_NEAR(costs[l], t * t, 1e-12);
    mean += t * t / cfg.L;
  }
  EXPECT_NEAR(h2sw_estimate(mu, nu, cfg), mean, 1e-12);
}

TEST(H2sw, TriangleInequalityWithASharedStream) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = synthetic::random_cloud(kR3S2, 12, 3 * seed);
    const auto b = synthetic::random_cloud(kR3S2, 9, 3 * seed + 1, true);
    const auto c = synthetic::random_cloud(kR3S2, 15, 3 * seed + 2);
    const auto cfg = h2sw_config(30, seed);
    EXPECT_LE(sliced_distance(a, b, cfg), sliced_distance(a, c, cfg) + sliced_distance(c, b, cfg) + 1e-9);
  }
}

TEST(H2sw, StandardErrorMatchesPerDirectionSpread) {
  const auto mu = synthetic::random_cloud(kR3S2, 20, 1), nu = synthetic::random_cloud(kR3S2, 20, 2);
  const auto cfg = h2sw_config(50, 2);
  const auto costs = per_direction_costs(mu, nu, cfg);
  double mean = 0, var = 0;
  for (double c : costs) mean += c / costs.size();
  for (double c : costs) var += (c - mean) * (c - mean) / (costs.size() - 1);
  const auto est = estimate_with_error(mu, nu, cfg);
  EXPECT_NEAR(est.value, mean, 1e-12);
  EXPECT_NEAR(est.std_error, std::sqrt(var / costs.size()), 1e-12);
  EXPECT_EQ(estimate_with_error(mu, nu, h2sw_config(1, 2)).std_error, 0.0);
}

TEST(H2sw, MismatchedSpecsAreRejected) {
  const auto mu = synthetic::random_cloud(kR3S2, 5, 1);
  const auto nu = synthetic::random_cloud({SpaceSpec::euclidean(3), SpaceSpec::euclidean(3)}, 5, 2);
  EXPECT_THROW(h2sw_estimate(mu, nu, h2sw_config(5, 1)), ConfigError);
}

TEST(SwGsw, IdenticalCloudsGiveZero) {
  const auto mu = synthetic::random_cloud(kR3S2, 25, 4);
  EstimatorConfig cfg;
  cfg.L = 20;
  EXPECT_EQ(sw_estimate(mu, mu, cfg), 0.0);
  cfg.gs = {Circular{1.0}};
  EXPECT_EQ(gsw_estimate(mu, mu, cfg), 0.0);
}

TEST(SwGsw, SwEqualsGswWithALinearFunction) {
  const auto mu = synthetic::random_cloud(kR3S2, 25, 4), nu = synthetic::random_cloud(kR3S2, 25, 5);
  EstimatorConfig cfg;
  cfg.L = 30;
  cfg.seed = 8;
  cfg.gs = {Linear{}};
  EXPECT_EQ(sw_estimate(mu, nu, cfg), gsw_estimate(mu, nu, cfg));
}

TEST(Chsw, ZeroSecondWeightCollapsesToTheFirstMarginal) {
  const auto mu = synthetic::random_cloud(kR3S2, 18, 1), nu = synthetic::random_cloud(kR3S2, 18, 2);
  EstimatorConfig cfg = h2sw_config(40, 7);
  cfg.fixed_psi = std::vector<double>{1.0, 0.0};
  const auto costs = per_direction_costs(mu, nu, [&] {
    auto c = cfg;
    c.family = Family::CHSW;
    return c;
  }());
  double expected = 0;
  for (std::size_t l = 0; l < cfg.L; ++l) {
    const auto dir = slice_direction(cfg, kR3S2, l);
    expected += wasserstein_1d(grt_project(mu.marginal(0), dir.thetas[0], Linear{}),
                               grt_project(nu.marginal(0), dir.thetas[0], Linear{}), 2.0);
    EXPECT_NEAR(costs[l], wasserstein_1d(grt_project(mu.marginal(0), dir.thetas[0], Linear{}),
                                         grt_project(nu.marginal(0), dir.thetas[0], Linear{}), 2.0),
                1e-12);
  }
  EXPECT_NEAR(chsw_estimate(mu, nu, cfg), expected / cfg.L, 1e-12);
  EXPECT_EQ(chsw_estimate(mu, mu, cfg), 0.0);
}

TEST(Chsw, SingleMarginalEqualsH2sw) {
  const std::vector<SpaceSpec> specs{SpaceSpec::sphere(3)};
  const auto mu = synthetic::random_cloud(specs, 18, 1), nu = synthetic::random_cloud(specs, 18, 2);
  EstimatorConfig cfg;
  cfg.gs = {Circular{1.0}};
  cfg.L = 25;
  cfg.seed = 3;
  cfg.fixed_psi = std::vector<double>{1.0};
  EXPECT_EQ(chsw_estimate(mu, nu, cfg), h2sw_estimate(mu, nu, cfg));
}

TEST(Gradient, ZeroForIdenticalClouds) {
  const auto mu = synthetic::random_cloud(kR3S2, 12, 1);
  auto cfg = h2sw_config(20, 1);
  cfg.singular_policy = SingularPolicy::Lenient;
  for (const auto& block : h2sw_gradient(mu, mu, cfg))
    for (double v : block.data) EXPECT_EQ(v, 0.0);
}

TEST(Gradient, SingleSupportLinearMatchesHandChainRule) {
  const std::vector<SpaceSpec> specs{SpaceSpec::euclidean(3), SpaceSpec::euclidean(2)};
  const auto mu = synthetic::random_cloud(specs, 1, 5), nu = synthetic::random_cloud(specs, 1, 6);
  EstimatorConfig cfg;
  cfg.gs = {Linear{}, Linear{}};
  cfg.L = 30;
  cfg.seed = 2;
  std::vector<std::vector<double>> expected{std::vector<double>(3), std::vector<double>(2)};
  for (std::size_t l = 0; l < cfg.L; ++l) {
    const auto dir = slice_direction(cfg, specs, l);
    double t = 0;
    for (std::size_t k = 0; k < 2; ++k) {
      double delta = 0;
      for (std::size_t c = 0; c < specs[k].dim; ++c)
        delta += (mu.block(k)(0, c) - nu.block(k)(0, c)) * dir.thetas[k][c];
      t += dir.psi[k] * delta;
    }
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t c = 0; c < specs[k].dim; ++c) expected[k][c] += 2 * t * dir.psi[k] * dir.thetas[k][c] / cfg.L;
  }
  const auto grad = h2sw_gradient(mu, nu, cfg);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t c = 0; c < specs[k].dim; ++c) EXPECT_NEAR(grad[k](0, c), expected[k][c], 1e-12);
}

TEST(Gradient, RejectsNonUniformWeights) {
  const auto mu = synthetic::random_cloud(kR3S2, 8, 1, true), nu = synthetic::random_cloud(kR3S2, 8, 2);
  EXPECT_THROW(h2sw_gradient(mu, nu, h2sw_config(5, 1)), UnsupportedError);
}

TEST(McStd, ZeroForIdenticalClouds) {
  const auto mu = synthetic::random_cloud(kR3S2, 10, 1);
  EXPECT_EQ(mc_std(mu, mu, h2sw_config(10, 1), 2), 0.0);
}

TEST(McStd, ShrinksWithMoreProjections) {
  const auto mu = synthetic::random_cloud(kR3S2, 16, 1), nu = synthetic::random_cloud(kR3S2, 16, 2);
  EXPECT_GT(mc_std(mu, nu, h2sw_config(10, 1), 30), mc_std(mu, nu, h2sw_config(160, 1), 30));
}

}  // namespace
}  // namespace h2sw
