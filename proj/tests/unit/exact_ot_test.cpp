#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "h2sw/error.hpp"
#include "h2sw/exact_ot.hpp"
#include "h2sw/oracle.hpp"
#include "h2sw/random.hpp"
#include "h2sw/synthetic.hpp"

namespace h2sw {
namespace {

const std::vector<SpaceSpec> kR2S1{SpaceSpec::euclidean(2), SpaceSpec::sphere(2)};

Matrix random_cost(std::size_t n, std::size_t m, std::uint64_t seed) {
  StreamRng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 10.0);
  Matrix c(n, m);
  for (auto& v : c.data) v = unit(rng);
  return c;
}

std::vector<double> random_weights(std::size_t n, std::uint64_t seed) {
  StreamRng rng(seed);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  std::vector<double> w(n);
  for (auto& v : w) v = unit(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= total;
  return w;
}

TEST(MixedCost, Example) {
  Matrix e1(1, 3), e2(1, 3), s(1, 3);
  e2(0, 0) = 3;
  e2(0, 1) = 4;
  s(0, 2) = 1;
  const std::vector<SpaceSpec> specs{SpaceSpec::euclidean(3), SpaceSpec::sphere(3)};
  const auto mu = JointCloud::uniform({e1, s}, specs), nu = JointCloud::uniform({e2, s}, specs);
  EXPECT_EQ(mixed_cost_matrix(mu, nu, 2)(0, 0), 25.0);
  EXPECT_EQ(joint_wasserstein(mu, nu, 2).cost, 25.0);
}

TEST(MixedCost, MatchesFirstPrinciplesOracle) {
  const std::vector<SpaceSpec> specs{SpaceSpec::euclidean(2), SpaceSpec::sphere(3), SpaceSpec::lorentz(2)};
  const auto mu = synthetic::random_cloud(specs, 7, 1), nu = synthetic::random_cloud(specs, 5, 2);
  for (double p : {1.0, 2.0}) {
    const auto c = mixed_cost_matrix(mu, nu, p);
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(c(i, j), oracle::mixed_cost(mu, i, nu, j, p), 1e-10);
  }
}

TEST(JointWasserstein, IdenticalCloudsGiveZeroWithADiagonalPlan) {
  const auto mu = synthetic::random_cloud(kR2S1, 8, 3);
  const auto result = joint_wasserstein(mu, mu, 2);
  EXPECT_EQ(result.cost, 0.0);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(result.plan.coupling(i, i), 1.0 / 8, 1e-15);
}

TEST(JointWasserstein, MatchesPermutationOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto mu = synthetic::random_cloud(kR2S1, 6, 2 * seed), nu = synthetic::random_cloud(kR2S1, 6, 2 * seed + 1);
    EXPECT_NEAR(joint_wasserstein(mu, nu, 2).cost, oracle::permutation_assignment(mixed_cost_matrix(mu, nu, 2)),
                1e-9);
  }
}

TEST(Assignment, AgreesWithSimplexOnUniformInstances) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 2 + seed % 12;
    const auto cost = random_cost(n, n, seed);
    const std::vector<double> w(n, 1.0 / n);
    const auto perm = solve_assignment(cost);
    double assignment = 0;
    for (std::size_t i = 0; i < n; ++i) assignment += cost(i, perm[i]) / n;
    const auto plan = solve_transport_simplex(cost, w, w);
    EXPECT_NEAR(plan.cost, assignment, 1e-8);
    EXPECT_NO_THROW(check_plan(plan, cost, w, w));
  }
}

TEST(Simplex, FeasibleOnGeneralWeights) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 1 + seed % 9, m = 1 + (seed * 7) % 11;
    const auto cost = random_cost(n, m, seed);
    const auto a = random_weights(n, seed + 100), b = random_weights(m, seed + 200);
    const auto plan = optimal_transport(cost, a, b);
    EXPECT_NO_THROW(check_plan(plan, cost, a, b));
  }
}

TEST(Simplex, BeatsEveryVertexFromANorthwestRule) {
  // Any feasible plan bounds the optimum; the northwest corner plan is one.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 5, m = 6;
    const auto cost = random_cost(n, m, seed);
    auto a = random_weights(n, seed + 1), b = random_weights(m, seed + 2);
    double nw = 0;
    auto ra = a, rb = b;
    for (std::size_t i = 0, j = 0; i < n && j < m;) {
      const double q = std::min(ra[i], rb[j]);
      nw += q * cost(i, j);
      ra[i] -= q;
      rb[j] -= q;
      if (ra[i] <= 1e-15) ++i;
      else ++j;
    }
    EXPECT_LE(optimal_transport(cost, a, b).cost, nw + 1e-12);
  }
}

TEST(Simplex, HandlesDegenerateUniformInstances) {
  Matrix cost(4, 4, 1.0);
  const std::vector<double> w(4, 0.25);
  const auto plan = solve_transport_simplex(cost, w, w);
  EXPECT_NEAR(plan.cost, 1.0, 1e-12);
  EXPECT_NO_THROW(check_plan(plan, cost, w, w));
}

TEST(JointWasserstein, ConstantShiftRaisesCostByTheConstant) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto cost = random_cost(7, 7, seed);
    const std::vector<double> w(7, 1.0 / 7);
    const double base = optimal_transport(cost, w, w).cost;
    for (auto& v : cost.data) v += 2.5;
    EXPECT_NEAR(optimal_transport(cost, w, w).cost, base + 2.5, 1e-10);
  }
}

TEST(JointWasserstein, MetricAxiomsOnSmallTriples) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = synthetic::random_cloud(kR2S1, 5, 3 * seed, true);
    const auto b = synthetic::random_cloud(kR2S1, 6, 3 * seed + 1);
    const auto c = synthetic::random_cloud(kR2S1, 4, 3 * seed + 2, true);
    const double p = 1.0;
    const double ab = joint_wasserstein(a, b, p).cost, ba = joint_wasserstein(b, a, p).cost;
    const double ac = joint_wasserstein(a, c, p).cost, cb = joint_wasserstein(c, b, p).cost;
    EXPECT_NEAR(ab, ba, 1e-10);
    EXPECT_LE(ab, ac + cb + 1e-8);
    EXPECT_NEAR(joint_wasserstein(a, a, p).cost, 0.0, 1e-12);
  }
}

TEST(JointWasserstein, GuardsAndValidation) {
  const auto mu = synthetic::random_cloud(kR2S1, 30, 1);
  ExactOptions tight;
  tight.max_cells = 100;
  EXPECT_THROW(joint_wasserstein(mu, mu, 2, tight), ResourceError);
  const auto cost = random_cost(2, 2, 1);
  const std::vector<double> bad{0.5, 0.6}, good{0.5, 0.5};
  EXPECT_THROW(optimal_transport(cost, bad, good), ValidationError);
}

}  // namespace
}  // namespace h2sw
