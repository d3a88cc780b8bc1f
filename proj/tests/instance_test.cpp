// Instance families: membership, certified distances (cross-checked
// against the brute-force oracle at small sizes), frozen point values for
// the hard pairs, and reproducibility under seeds.

#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "monotest/instances.hpp"
#include "support/exact_oracles.hpp"

using namespace monotest;

namespace {

InstanceSpec make(const std::string& family, std::int64_t n,
                  std::uint64_t seed = 0,
                  std::map<std::string, double> params = {}) {
  InstanceSpec s;
  s.family = family;
  s.n = n;
  s.seed = seed;
  s.params = std::move(params);
  return s;
}

TEST(Instances, UniformIsMonotoneWithOneRun) {
  auto d = generate_instance(make("uniform", 100));
  auto cert = certify_instance(d);
  EXPECT_TRUE(cert.monotone);
  EXPECT_EQ(cert.distance, 0.0);
  EXPECT_EQ(cert.runs, 1u);
}

TEST(Instances, RandomMonotoneIsMonotoneAndSeeded) {
  auto a = generate_instance(make("random_monotone", 200, 7));
  auto b = generate_instance(make("random_monotone", 200, 7));
  auto c = generate_instance(make("random_monotone", 200, 8));
  EXPECT_TRUE(is_monotone(a));
  EXPECT_EQ(a.weights(), b.weights());
  EXPECT_GT(tv_distance(a, c), 0.0);
}

TEST(Instances, StaircaseHalvesPerBlockAndEqualsItsFlattening) {
  auto d = generate_instance(make("staircase", 64, 0, {{"alpha", 1.0}}));
  EXPECT_TRUE(is_monotone(d));
  auto part = oblivious_partition(64, 1.0);
  // Constant within blocks, ratio 1/2 across consecutive block heights.
  for (std::size_t k = 0; k < part.blocks(); ++k) {
    for (std::int64_t i = part.lo(k); i < part.hi(k); ++i) {
      EXPECT_DOUBLE_EQ(d.value(i), d.value(i + 1));
    }
    if (k > 0) {
      EXPECT_NEAR(d.value(part.lo(k)), 0.5 * d.value(part.lo(k - 1)),
                  1e-15);
    }
  }
  auto flat = flatten_pmf(d, part);
  for (std::int64_t i = 1; i <= 64; ++i)
    EXPECT_NEAR(flat.value(i), d.value(i), 1e-15);
}

TEST(Instances, MirroredStaircaseIsFar) {
  auto d = generate_instance(
      make("mirrored_staircase", 64, 0, {{"alpha", 1.0}}));
  EXPECT_FALSE(is_monotone(d));
  EXPECT_GT(certify_instance(d).distance, 0.3);
  // Certified distance matches the brute-force oracle at small size.
  auto tiny = generate_instance(
      make("mirrored_staircase", 6, 0, {{"alpha", 1.0}}));
  EXPECT_NEAR(certify_distance_to_monotone(tiny),
              testsupport::brute_monotone_distance(tiny.weights()), 1e-9);
}

TEST(Instances, EvalHardPairDistancesAreExact) {
  for (double eps : {0.1, 0.25, 0.35}) {
    auto far = generate_instance(make("eval_lb", 512, 0, {{"eps", eps}}));
    auto member = generate_instance(
        make("eval_lb", 512, 0, {{"eps", eps}, {"member", 1.0}}));
    EXPECT_TRUE(is_monotone(member)) << eps;
    EXPECT_FALSE(is_monotone(far)) << eps;
    EXPECT_NEAR(certify_distance_to_monotone(far), eps, 1e-9) << eps;
    // The pair agrees pointwise above position 2m.
    auto m = static_cast<std::int64_t>(
        std::floor(eps * 512.0 / 2.0));
    for (std::int64_t i = 2 * m + 1; i <= 512; ++i)
      ASSERT_EQ(far.value(i), member.value(i));
  }
}

TEST(Instances, EvalHardDistanceMatchesBruteForce) {
  // n = 8, m = 1, eps = 0.3: bands (0, 0.6, uniform 0.4 over 6 points).
  auto far = generate_instance(
      make("eval_lb", 8, 0, {{"eps", 0.3}, {"m", 1.0}}));
  EXPECT_NEAR(testsupport::brute_monotone_distance(far.weights()), 0.3, 1e-9);
  EXPECT_NEAR(certify_distance_to_monotone(far), 0.3, 1e-9);
}

TEST(Instances, EvalHardRejectsBadGeometry) {
  EXPECT_THROW(
      generate_instance(make("eval_lb", 8, 0, {{"eps", 0.3}, {"m", 4.0}})),
      config_error);
  EXPECT_THROW(
      generate_instance(make("eval_lb", 64, 0, {{"eps", 0.1}, {"m", 20.0}})),
      config_error);
  EXPECT_THROW(generate_instance(make("eval_lb", 64, 0, {{"eps", 0.6}})),
               config_error);
}

TEST(Instances, SpikedDecayFrozenValuesAtTwoLevels) {
  // Two levels on 6 points: member is (1/4, 1/4, 1/8, 1/8, 1/8, 1/8).
  auto member = generate_instance(
      make("hidden_spike", 6, 0, {{"levels", 2.0}, {"member", 1.0}}));
  EXPECT_DOUBLE_EQ(member.value(1), 0.25);
  EXPECT_DOUBLE_EQ(member.value(2), 0.25);
  for (std::int64_t i = 3; i <= 6; ++i)
    EXPECT_DOUBLE_EQ(member.value(i), 0.125);
  EXPECT_TRUE(is_monotone(member));

  // Far variant: base (3/32, 3/32, 3/64 x4) plus a 5/8 spike in the last
  // level; the base and spike sum to exactly one.
  auto far = generate_instance(
      make("hidden_spike", 6, 11, {{"levels", 2.0}}));
  int spikes = 0;
  for (std::int64_t i = 1; i <= 6; ++i) {
    double base = (i <= 2) ? 3.0 / 32.0 : 3.0 / 64.0;
    if (std::abs(far.value(i) - base) < 1e-12) continue;
    EXPECT_GE(i, 3);
    EXPECT_NEAR(far.value(i), base + 5.0 / 8.0, 1e-12);
    ++spikes;
  }
  EXPECT_EQ(spikes, 1);
  EXPECT_FALSE(is_monotone(far));
  EXPECT_NEAR(certify_distance_to_monotone(far),
              testsupport::brute_monotone_distance(far.weights()), 1e-9);
  EXPECT_GT(certify_instance(far).distance, 0.25);
}

TEST(Instances, SpikedDecaySeedMovesTheSpike) {
  std::set<std::int64_t> positions;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    auto far = generate_instance(
        make("hidden_spike", 6, seed, {{"levels", 2.0}}));
    for (std::int64_t i = 3; i <= 6; ++i)
      if (far.value(i) > 0.5) positions.insert(i);
  }
  EXPECT_GE(positions.size(), 3u);  // spike roams the last level
}

TEST(Instances, SpikedDecayDefaultGeometryAndPadding) {
  // Five levels need 5 + 25 + 125 + 625 + 3125 = 3905 points.
  auto d = generate_instance(
      make("hidden_spike", 4096, 3, {{"member", 1.0}}));
  EXPECT_TRUE(is_monotone(d));
  for (std::int64_t i = 3906; i <= 4096; ++i) EXPECT_EQ(d.value(i), 0.0);
  EXPECT_DOUBLE_EQ(d.value(1), 1.0 / 25.0);
  EXPECT_DOUBLE_EQ(d.value(3905), std::pow(5.0, -6.0));
  EXPECT_THROW(generate_instance(make("hidden_spike", 3904, 0)),
               config_error);
  auto far = generate_instance(make("hidden_spike", 4096, 3));
  EXPECT_FALSE(is_monotone(far));
  EXPECT_GT(certify_instance(far).distance, 0.25);
}

TEST(Instances, PerturbedMonotoneLandsInWindow) {
  for (double eps : {0.1, 0.3}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto spec = make("perturbed_monotone", 256, seed,
                       {{"alpha", 0.5}, {"eps", eps}});
      auto d = generate_instance(spec);
      double dist = certify_distance_to_monotone(d);
      EXPECT_GE(dist, eps / 2.0) << eps << " seed " << seed;
      EXPECT_LE(dist, eps) << eps << " seed " << seed;
      // Piecewise constant on its own construction partition.
      auto part = oblivious_partition(256, 0.5);
      auto flat = flatten_pmf(d, part);
      for (std::int64_t i = 1; i <= 256; ++i)
        ASSERT_NEAR(flat.value(i), d.value(i), 1e-12);
    }
  }
}

TEST(Instances, PerturbedMonotoneRejectsUnreachableTargets) {
  EXPECT_THROW(generate_instance(make("perturbed_monotone", 64, 0,
                                      {{"alpha", 1.0}, {"eps", 0.95}})),
               config_error);
}

TEST(Instances, UnknownFamilyAndBadSizeAreConfigErrors) {
  EXPECT_THROW(generate_instance(make("nope", 16)), config_error);
  EXPECT_THROW(generate_instance(make("uniform", 0)), config_error);
}

TEST(Instances, SpecJsonRoundTripShape) {
  auto spec = make("eval_lb", 512, 9, {{"eps", 0.25}, {"m", 64.0}});
  auto j = spec.to_json();
  EXPECT_EQ(j.at("family"), "eval_lb");
  EXPECT_EQ(j.at("n").get<std::int64_t>(), 512);
  EXPECT_EQ(j.at("seed").get<std::uint64_t>(), 9u);
  EXPECT_DOUBLE_EQ(j.at("params").at("eps").get<double>(), 0.25);
}

}  // namespace
