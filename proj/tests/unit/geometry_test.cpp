#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "h2sw/error.hpp"
#include "h2sw/geometry.hpp"
#include "h2sw/synthetic.hpp"

namespace h2sw {
namespace {

TEST(SampleUnitSphere, OneDimensionalDrawsAreSigns) {
  StreamRng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto v = sample_unit_sphere(1, rng);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(std::abs(v[0]), 1.0);
  }
}

TEST(SampleUnitSphere, UnitNormForAnyDimensionAndSeed) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    StreamRng rng(seed);
    for (std::size_t dim = 1; dim <= 12; ++dim) EXPECT_NEAR(norm2(sample_unit_sphere(dim, rng)), 1.0, 1e-12);
  }
}

TEST(SampleUnitSphere, CoordinateMeansVanishInThreeDimensions) {
  StreamRng rng(11);
  double mean[3] = {0, 0, 0};
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto v = sample_unit_sphere(3, rng);
    for (int c = 0; c < 3; ++c) mean[c] += v[c] / draws;
  }
  for (double m : mean) EXPECT_LT(std::abs(m), 0.02);
}

TEST(SampleUnitSphere, ZeroDimensionIsRejected) {
  StreamRng rng(1);
  EXPECT_THROW(sample_unit_sphere(0, rng), DomainError);
}

TEST(SampleUnitSphere, SeedDeterministic) {
  StreamRng a(42, 7), b(42, 7);
  EXPECT_EQ(sample_unit_sphere(9, a), sample_unit_sphere(9, b));
}

TEST(SampleDirection, SingleMarginalFixesPsi) {
  const std::vector<SpaceSpec> specs{SpaceSpec::euclidean(3)};
  const std::vector<DefiningFunction> gs{Linear{}};
  StreamRng rng(5);
  const auto dir = sample_direction(specs, gs, rng);
  EXPECT_EQ(dir.psi, std::vector<double>{1.0});
}

TEST(SampleDirection, LorentzDirectionIsTangentAtBasepoint) {
  const std::vector<SpaceSpec> specs{SpaceSpec::euclidean(5), SpaceSpec::lorentz(2)};
  const std::vector<DefiningFunction> gs{Linear{}, BusemannLorentz{}};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    StreamRng rng(seed);
    const auto dir = sample_direction(specs, gs, rng);
    EXPECT_NEAR(dir.psi[0] * dir.psi[0] + dir.psi[1] * dir.psi[1], 1.0, 1e-12);
    EXPECT_EQ(dir.thetas[1][0], 0.0);
    EXPECT_EQ(dir.thetas[1].size(), 3u);
  }
}

TEST(SampleDirection, EverySampleValidates) {
  const std::vector<SpaceSpec> specs{SpaceSpec::euclidean(3), SpaceSpec::sphere(3), SpaceSpec::lorentz(2),
                                     SpaceSpec::euclidean(2)};
  const std::vector<DefiningFunction> gs{Linear{}, Circular{0.7}, BusemannLorentz{}, OddPolynomial{3}};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    StreamRng rng(seed);
    EXPECT_NO_THROW(validate_direction(sample_direction(specs, gs, rng), specs, gs));
  }
}

TEST(SampleDirection, BusemannOffLorentzIsAConfigError) {
  const std::vector<SpaceSpec> specs{SpaceSpec::sphere(3)};
  const std::vector<DefiningFunction> gs{BusemannLorentz{}};
  StreamRng rng(0);
  EXPECT_THROW(sample_direction(specs, gs, rng), ConfigError);
}

TEST(GreatCircle, Examples) {
  const std::vector<double> x{1, 0, 0}, y{0, 1, 0}, z{-1, 0, 0};
  EXPECT_EQ(great_circle_distance(x, x), 0.0);
  EXPECT_DOUBLE_EQ(great_circle_distance(x, y), std::numbers::pi / 2);
  EXPECT_DOUBLE_EQ(great_circle_distance(x, z), std::numbers::pi);
}

TEST(GreatCircle, RejectsNonUnitInput) {
  const std::vector<double> x{1, 0, 0}, y{0, 2, 0};
  EXPECT_THROW(great_circle_distance(x, y), ValidationError);
}

TEST(GreatCircle, TriangleInequalityOnRandomTriples) {
  StreamRng rng(9);
  for (int t = 0; t < 1000; ++t) {
    const auto a = sample_unit_sphere(3, rng), b = sample_unit_sphere(3, rng), c = sample_unit_sphere(3, rng);
    EXPECT_LE(great_circle_distance(a, c), great_circle_distance(a, b) + great_circle_distance(b, c) + 1e-9);
    EXPECT_EQ(great_circle_distance(a, b), great_circle_distance(b, a));
    EXPECT_GE(great_circle_distance(a, b), 0.0);
  }
}

TEST(Lorentz, InnerProductExamples) {
  const auto x0 = lorentz_basepoint(3);
  EXPECT_EQ(lorentz_inner(x0, x0), -1.0);
  const std::vector<double> tangent{0, 0.6, 0.8, 0};
  EXPECT_EQ(lorentz_inner(x0, tangent), 0.0);
  const std::vector<double> short_vec{1, 0};
  EXPECT_THROW(lorentz_inner(x0, short_vec), ValidationError);
}

TEST(Lorentz, RandomPointsSatisfyTheConstraint) {
  const auto cloud = synthetic::random_cloud({SpaceSpec::lorentz(4)}, 100, 3, false, 2.0);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    EXPECT_NEAR(lorentz_inner(cloud.block(0).row(i), cloud.block(0).row(i)), -1.0, 1e-6);
  }
}

TEST(Lorentz, DistanceExamples) {
  const auto x0 = lorentz_basepoint(2);
  const std::vector<double> y{std::cosh(1.0), std::sinh(1.0), 0.0};
  EXPECT_EQ(lorentz_distance(x0, x0), 0.0);
  EXPECT_NEAR(lorentz_distance(x0, y), 1.0, 1e-12);
  EXPECT_EQ(lorentz_distance(x0, y), lorentz_distance(y, x0));
}

TEST(Lorentz, DistanceIsAMetricOnRandomPoints) {
  const auto cloud = synthetic::random_cloud({SpaceSpec::lorentz(3)}, 30, 8, false, 1.5);
  const auto& b = cloud.block(0);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    EXPECT_NEAR(lorentz_distance(b.row(i), b.row(i)), 0.0, 1e-6);
    for (std::size_t j = 0; j < cloud.size(); ++j) {
      const double d = lorentz_distance(b.row(i), b.row(j));
      EXPECT_GE(d, 0.0);
      EXPECT_EQ(d, lorentz_distance(b.row(j), b.row(i)));
      if (i != j) EXPECT_GT(d, 0.0);
    }
  }
}

TEST(Lorentz, DistanceRejectsOffManifoldPoints) {
  const auto x0 = lorentz_basepoint(2);
  const std::vector<double> bad{1.0, 1.0, 0.0};
  EXPECT_THROW(lorentz_distance(x0, bad), ValidationError);
}

TEST(Lorentz, ExpMapLandsOnTheHyperboloid) {
  const std::vector<double> v{0.3, -1.2, 0.5};
  const auto x = lorentz_exp_at_basepoint(v);
  EXPECT_NEAR(lorentz_inner(x, x), -1.0, 1e-12);
  EXPECT_NEAR(lorentz_distance(lorentz_basepoint(3), x), norm2(v), 1e-12);
}

TEST(JointCloud, ValidatesInvariants) {
  Matrix sphere(2, 3, 0.0);
  sphere(0, 0) = 1.0;
  sphere(1, 1) = 1.0;
  EXPECT_NO_THROW(JointCloud::uniform({sphere}, {SpaceSpec::sphere(3)}));
  Matrix off = sphere;
  off(1, 1) = 1.1;
  EXPECT_THROW(JointCloud::uniform({off}, {SpaceSpec::sphere(3)}), ValidationError);
  EXPECT_THROW(JointCloud({sphere}, {SpaceSpec::sphere(3)}, {0.5, 0.6}), ValidationError);
  EXPECT_THROW(JointCloud({sphere}, {SpaceSpec::sphere(3)}, {1.5, -0.5}), ValidationError);
  Matrix lorentz(1, 3, 0.0);
  lorentz(0, 0) = -1.0;
  EXPECT_THROW(JointCloud::uniform({lorentz}, {SpaceSpec::lorentz(2)}), ValidationError);
  Matrix wrong_rows(3, 2, 0.0);
  EXPECT_THROW(JointCloud::uniform({sphere, wrong_rows}, {SpaceSpec::sphere(3), SpaceSpec::euclidean(2)}),
               ValidationError);
}

}  // namespace
}  // namespace h2sw
