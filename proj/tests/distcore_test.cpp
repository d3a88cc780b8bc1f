// Core distribution machinery: pmf plumbing, interval partitions, the
// flatten/reduce/expand maps, exact LP distances and the growth-property
// operations, validated against independent exhaustive optimizers.

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "monotest/distance.hpp"
#include "monotest/lp.hpp"
#include "monotest/partition.hpp"
#include "monotest/pmf.hpp"
#include "monotest/rng.hpp"
#include "support/exact_oracles.hpp"
#include "support/random_dists.hpp"

using namespace monotest;

namespace {

// ---------------------------------------------------------------- pmf --

TEST(Pmf, BasicsAndPrefix) {
  Pmf p({0.1, 0.2, 0.3, 0.4});
  EXPECT_EQ(p.n(), 4);
  EXPECT_DOUBLE_EQ(p.value(1), 0.1);
  EXPECT_DOUBLE_EQ(p.value(4), 0.4);
  EXPECT_DOUBLE_EQ(p.prefix(0), 0.0);
  EXPECT_NEAR(p.prefix(2), 0.3, 1e-15);
  EXPECT_DOUBLE_EQ(p.prefix(4), 1.0);
  EXPECT_NEAR(p.interval_mass(2, 3), 0.5, 1e-15);
  EXPECT_THROW(p.value(0), config_error);
  EXPECT_THROW(p.value(5), config_error);
  EXPECT_THROW(p.interval_mass(3, 2), config_error);
}

TEST(Pmf, NormalizationToleranceIsOneNano) {
  // Deviation within 1e-9: accepted and renormalized to mass exactly 1.
  Pmf ok({0.5, 0.5 + 4e-10});
  EXPECT_DOUBLE_EQ(ok.prefix(2), 1.0);
  EXPECT_NEAR(ok.value(1) + ok.value(2), 1.0, 1e-15);
  // Larger deviation: rejected.
  EXPECT_THROW(Pmf({0.5, 0.5 + 5e-9}), config_error);
  EXPECT_THROW(Pmf({0.5, 0.4}), config_error);
  EXPECT_THROW(Pmf({1.2, -0.2}), config_error);
  EXPECT_THROW(Pmf(std::vector<double>{}), config_error);
}

TEST(Pmf, UpperIndexSkipsZeroMass) {
  Pmf p({0.5, 0.0, 0.0, 0.5});
  // Any target in (0.5, 1) must land on the last point, never on the
  // zero-mass middle.
  EXPECT_EQ(p.upper_index(0.6, 1, 4), 4);
  EXPECT_EQ(p.upper_index(0.49, 1, 4), 1);
}

TEST(Pmf, TvDistanceAndMirror) {
  Pmf p({0.2, 0.8});
  Pmf q({0.7, 0.3});
  EXPECT_NEAR(tv_distance(p, q), 0.5, 1e-15);
  EXPECT_NEAR(tv_distance(p, p), 0.0, 1e-15);
  Pmf m = mirror(p);
  EXPECT_DOUBLE_EQ(m.value(1), 0.8);
  EXPECT_DOUBLE_EQ(m.value(2), 0.2);
  EXPECT_EQ(mirror(m), p);
  Pmf r({0.1, 0.2, 0.3, 0.4});
  Pmf s({0.25, 0.25, 0.25, 0.25});
  EXPECT_NEAR(tv_distance(mirror(r), mirror(s)), tv_distance(r, s), 1e-15);
}

TEST(Pmf, JsonRoundTrip) {
  Pmf p({0.125, 0.5, 0.375});
  Pmf q = pmf_from_json(to_json(p));
  EXPECT_EQ(p, q);
  EXPECT_THROW(pmf_from_json(nlohmann::json{{"n", 2}}), config_error);
}

// ---------------------------------------------------------- partitions --

TEST(Partition, GeometricSizesWithTruncation) {
  // n=14, growth 2: sizes 2, 4, 8 exactly cover the domain.
  auto p14 = oblivious_partition(14, 1.0);
  EXPECT_EQ(p14.bounds, (std::vector<std::int64_t>{0, 2, 6, 14}));
  // n=15: a truncated final block of size 1 is kept.
  auto p15 = oblivious_partition(15, 1.0);
  EXPECT_EQ(p15.bounds, (std::vector<std::int64_t>{0, 2, 6, 14, 15}));
  // Small growth: every block floors to size 1.
  auto p3 = oblivious_partition(3, 0.1);
  EXPECT_EQ(p3.bounds, (std::vector<std::int64_t>{0, 1, 2, 3}));
  // Degenerate domain.
  auto p1 = oblivious_partition(1, 0.5);
  EXPECT_EQ(p1.bounds, (std::vector<std::int64_t>{0, 1}));
  EXPECT_THROW(oblivious_partition(0, 0.5), config_error);
  EXPECT_THROW(oblivious_partition(10, 0.0), config_error);
}

TEST(Partition, BlockLookupAndSizes) {
  auto p = oblivious_partition(15, 1.0);
  EXPECT_EQ(p.blocks(), 4u);
  EXPECT_EQ(p.block_size(0), 2);
  EXPECT_EQ(p.block_size(2), 8);
  EXPECT_EQ(p.lo(1), 3);
  EXPECT_EQ(p.hi(1), 6);
  EXPECT_EQ(p.block_of(1), 0u);
  EXPECT_EQ(p.block_of(2), 0u);
  EXPECT_EQ(p.block_of(3), 1u);
  EXPECT_EQ(p.block_of(14), 2u);
  EXPECT_EQ(p.block_of(15), 3u);
  EXPECT_THROW(p.block_of(0), config_error);
  EXPECT_THROW(p.block_of(16), config_error);
}

TEST(Partition, LengthBoundHolds) {
  for (double alpha : {0.05, 0.1, 0.25, 0.5, 1.0}) {
    for (std::int64_t n : {1, 2, 7, 100, 4096, 100000}) {
      auto p = oblivious_partition(n, alpha);
      EXPECT_LE(static_cast<double>(p.blocks()),
                oblivious_length_bound(n, alpha))
          << "n=" << n << " alpha=" << alpha;
      // blocks tile the domain
      std::int64_t covered = 0;
      for (std::size_t k = 0; k < p.blocks(); ++k) covered += p.block_size(k);
      EXPECT_EQ(covered, n);
    }
  }
}

TEST(Partition, FlattenReduceExpandAgree) {
  Rng rng(1234);
  for (int rep = 0; rep < 20; ++rep) {
    auto d = testsupport::random_pmf(rng, 97);
    auto part = oblivious_partition(97, 0.4);
    auto h = flatten(d, part);
    auto red = reduce(d, part);
    ASSERT_EQ(red.n(), static_cast<std::int64_t>(part.blocks()));
    for (std::size_t k = 0; k < part.blocks(); ++k) {
      EXPECT_DOUBLE_EQ(h.blockMass[k],
                       red.weights()[k]);  // same arithmetic path
      EXPECT_NEAR(h.blockMass[k], d.interval_mass(part.lo(k), part.hi(k)),
                  1e-12);
    }
    auto full = flatten_pmf(d, part);
    for (std::size_t k = 0; k < part.blocks(); ++k)
      EXPECT_NEAR(full.interval_mass(part.lo(k), part.hi(k)), h.blockMass[k],
                  1e-12);
    // flattening is idempotent
    EXPECT_NEAR(tv_distance(full, flatten_pmf(full, part)), 0.0, 1e-12);
  }
}

TEST(Partition, FlatteningOfMonotoneStaysCloseAndMonotone) {
  Rng rng(99);
  for (double alpha : {0.1, 0.5, 1.0}) {
    for (int rep = 0; rep < 10; ++rep) {
      auto d = testsupport::random_monotone_pmf(rng, 300);
      auto part = oblivious_partition(300, alpha);
      auto flat = flatten_pmf(d, part);
      EXPECT_LE(tv_distance(d, flat), alpha + 1e-12);
      EXPECT_TRUE(is_monotone(flat));
    }
  }
}

TEST(Partition, FlatteningIsAContraction) {
  Rng rng(7);
  auto part = oblivious_partition(150, 0.3);
  for (int rep = 0; rep < 20; ++rep) {
    auto p = testsupport::random_pmf(rng, 150);
    auto d = testsupport::random_pmf(rng, 150);
    EXPECT_LE(tv_distance(flatten_pmf(p, part), flatten_pmf(d, part)),
              tv_distance(p, d) + 1e-12);
  }
}

TEST(Partition, HistogramJsonRoundTrip) {
  auto part = oblivious_partition(15, 1.0);
  Histogram h(part, {0.25, 0.25, 0.25, 0.25});
  auto j = to_json(h);
  EXPECT_EQ(j.at("n").get<int>(), 15);
  auto h2 = histogram_from_json(j);
  EXPECT_EQ(h2.part, h.part);
  EXPECT_EQ(h2.blockMass, h.blockMass);
}

// ------------------------------------------------------------- simplex --

TEST(Lp, SolvesTinyPrograms) {
  // min x0 subject to x0 + x1 = 1 -> 0 at (0,1).
  auto r = solve_equality_lp({{1.0, 1.0}}, {1.0}, {1.0, 0.0});
  EXPECT_NEAR(r.objective, 0.0, 1e-12);
  // min x0 + x1 subject to x0 + 2 x1 = 2, x0 - x1 = 0.5 -> (1, 0.5).
  auto r2 = solve_equality_lp({{1.0, 2.0}, {1.0, -1.0}}, {2.0, 0.5},
                              {1.0, 1.0});
  EXPECT_NEAR(r2.objective, 1.5, 1e-12);
  EXPECT_NEAR(r2.x[0], 1.0, 1e-12);
  EXPECT_NEAR(r2.x[1], 0.5, 1e-12);
}

TEST(Lp, DetectsInfeasibleAndUnbounded) {
  EXPECT_THROW(
      solve_equality_lp({{1.0, 1.0}, {1.0, 1.0}}, {1.0, 2.0}, {1.0, 0.0}),
      numeric_error);
  EXPECT_THROW(solve_equality_lp({{1.0, -1.0}}, {0.0}, {-1.0, 0.0}),
               numeric_error);
}

// ------------------------------------------------- monotone distances --

TEST(MonotoneDistance, FrozenTwoPointValues) {
  EXPECT_NEAR(distance_to_monotone_exact(Pmf({0.2, 0.8})), 0.3, 1e-12);
  EXPECT_NEAR(distance_to_monotone_exact(Pmf({0.3, 0.7})), 0.2, 1e-12);
  EXPECT_NEAR(distance_to_monotone_exact(Pmf({0.7, 0.3})), 0.0, 1e-12);
  EXPECT_NEAR(distance_to_monotone_exact(Pmf({0.5, 0.5})), 0.0, 1e-12);
}

TEST(MonotoneDistance, MedianSplittingCase) {
  // The optimal monotone witness levels the first two points at 57.5/120,
  // strictly between the input values; distance = (1/2)(27.5 + 27.5)/120.
  std::vector<double> w{30.0 / 120, 85.0 / 120, 5.0 / 120};
  EXPECT_NEAR(distance_to_monotone_exact(Pmf(w)), 27.5 / 120, 1e-10);
  EXPECT_NEAR(testsupport::brute_monotone_distance(w), 27.5 / 120, 1e-10);
}

TEST(MonotoneDistance, MatchesBruteForceOnSmallRandoms) {
  Rng rng(2024);
  for (int rep = 0; rep < 60; ++rep) {
    std::int64_t n = 2 + static_cast<std::int64_t>(rng.uniform_below(5));
    auto d = testsupport::random_pmf(rng, n);
    double lp = distance_to_monotone_exact(d);
    double brute = testsupport::brute_monotone_distance(d.weights());
    EXPECT_NEAR(lp, brute, 1e-9) << "n=" << n << " rep=" << rep;
  }
}

TEST(MonotoneDistance, GridUpperBoundSanity) {
  // The grid gives an upper bound within O(step); the LP must sit at or
  // below it (and within the step-resolution band).
  std::array<double, 3> d{30.0 / 120, 85.0 / 120, 5.0 / 120};
  double grid = testsupport::grid3_distance(
      d, 1000, [](const std::array<double, 3>& m) {
        return m[0] >= m[1] && m[1] >= m[2];
      });
  double lp = distance_to_monotone_exact(Pmf({d[0], d[1], d[2]}));
  EXPECT_LE(lp, grid + 1e-12);
  EXPECT_GE(lp, grid - 3.0 * 1e-3);
}

TEST(MonotoneDistance, FlatRestrictionEqualsFullLp) {
  Rng rng(555);
  for (int rep = 0; rep < 25; ++rep) {
    auto d = testsupport::random_flat_pmf(rng, 64, 7);
    double full = distance_to_monotone_exact(d);
    double cert = certify_distance_to_monotone(d);
    EXPECT_NEAR(full, cert, 1e-9) << "rep=" << rep;
  }
}

TEST(MonotoneDistance, FlatHistogramDirect) {
  auto part = oblivious_partition(14, 1.0);
  // Uniform: distance zero through the histogram path.
  Histogram u(part, {2.0 / 14, 4.0 / 14, 8.0 / 14});
  EXPECT_NEAR(distance_to_monotone_flat(u), 0.0, 1e-12);
  // All mass on the last block: far from non-increasing.
  Histogram h(part, {0.0, 0.0, 1.0});
  double viaLp = distance_to_monotone_flat(h);
  double viaExact = distance_to_monotone_exact(h.expand());
  EXPECT_NEAR(viaLp, viaExact, 1e-9);
  EXPECT_GT(viaLp, 0.3);
}

TEST(MonotoneDistance, MirrorGivesIncreasingSideDistance) {
  Rng rng(31337);
  auto d = testsupport::random_monotone_pmf(rng, 40);
  EXPECT_NEAR(distance_to_monotone_exact(d), 0.0, 1e-10);
  double rev = distance_to_monotone_exact(mirror(d));
  EXPECT_GT(rev, 0.05);  // a strictly decaying profile reversed is far
}

TEST(MonotoneDistance, RobustnessOfFlattening) {
  // tv(D, flat(D)) <= 2 dist(D, monotone) + alpha, and flattening never
  // increases the distance to monotone.
  Rng rng(4242);
  for (double alpha : {0.1, 0.5}) {
    auto part = oblivious_partition(48, alpha);
    for (int rep = 0; rep < 10; ++rep) {
      auto d = testsupport::random_pmf(rng, 48);
      double dist = distance_to_monotone_exact(d);
      auto flat = flatten_pmf(d, part);
      EXPECT_LE(tv_distance(d, flat), 2.0 * dist + alpha + 1e-9);
      EXPECT_LE(distance_to_monotone_exact(flat), dist + 1e-9);
    }
  }
}

// ------------------------------------------------- growth property ops --

TEST(GrowthProperty, MembershipAndCaps) {
  EXPECT_TRUE(satisfies_expprop(Pmf({0.25, 0.25, 0.25, 0.25}), 0.1));
  EXPECT_TRUE(satisfies_expprop(Pmf({0.4, 0.44, 0.16}), 0.1));
  EXPECT_FALSE(satisfies_expprop(Pmf({0.4, 0.45, 0.15}), 0.1));
  // Boundary case sits inside the 1e-12 slack.
  EXPECT_TRUE(satisfies_expprop(Pmf({0.5, 0.5}), 0.0));

  auto part = oblivious_partition(15, 1.0);  // sizes 2,4,8,1
  auto caps = ratio_caps(part);
  ASSERT_EQ(caps.size(), 3u);
  EXPECT_DOUBLE_EQ(caps[0], 2.0);
  EXPECT_DOUBLE_EQ(caps[1], 2.0);
  EXPECT_DOUBLE_EQ(caps[2], 0.125);
  // Reduced uniform distribution satisfies the size-ratio caps exactly...
  auto q = reduce(Pmf(std::vector<double>(15, 1.0 / 15)), part);
  EXPECT_TRUE(satisfies_ratio_caps(q, caps));
  // ...but violates the literal (1+alpha) growth bound at a size jump.
  EXPECT_FALSE(satisfies_expprop(q, 0.2));
}

TEST(GrowthProperty, ReducedMonotoneAlwaysSatisfiesCaps) {
  Rng rng(808);
  for (double alpha : {0.1, 0.3, 1.0}) {
    auto part = oblivious_partition(500, alpha);
    auto caps = ratio_caps(part);
    for (int rep = 0; rep < 10; ++rep) {
      auto d = testsupport::random_monotone_pmf(rng, 500);
      EXPECT_TRUE(satisfies_ratio_caps(reduce(d, part), caps));
    }
  }
}

TEST(GrowthProperty, WitnessExtraction) {
  Pmf q({0.5, 0.2, 0.3});
  auto w = tau_witnesses(q, 0.1, 0.2);
  ASSERT_EQ(w.indices.size(), 1u);
  EXPECT_EQ(w.indices[0], 3);
  EXPECT_NEAR(w.mass, 0.3, 1e-15);
  // With a large enough slack the violation disappears.
  EXPECT_TRUE(tau_witnesses(q, 0.1, 0.5).indices.empty());
  // Monotone-compatible input has no witnesses at any slack.
  EXPECT_TRUE(tau_witnesses(Pmf({0.6, 0.4}), 0.0, 0.0).indices.empty());
}

TEST(GrowthProperty, FixupFrozenTrace) {
  Pmf fixed = fixup(Pmf({0.3, 0.7}), 0.5);
  EXPECT_NEAR(fixed.value(1), 7.0 / 15, 1e-12);
  EXPECT_NEAR(fixed.value(2), 8.0 / 15, 1e-12);
}

TEST(GrowthProperty, FixupProducesMembersAndRespectsMassBound) {
  Rng rng(20240613);
  for (double alpha : {0.1, 0.5, 1.0}) {
    for (int rep = 0; rep < 40; ++rep) {
      std::int64_t l = 2 + static_cast<std::int64_t>(rng.uniform_below(15));
      auto q = testsupport::random_pmf(rng, l);
      auto w = tau_witnesses(q, alpha, 0.0);
      auto f = fixup(q, alpha);
      EXPECT_TRUE(satisfies_expprop(f, alpha, 1e-9))
          << "alpha=" << alpha << " rep=" << rep;
      EXPECT_LE(tv_distance(q, f),
                (1.0 + alpha) / alpha * w.mass + 1e-9)
          << "alpha=" << alpha << " rep=" << rep;
      // Members are left untouched.
      if (w.indices.empty() && satisfies_expprop(q, alpha)) {
        EXPECT_NEAR(tv_distance(q, f), 0.0, 1e-12);
      }
    }
  }
}

TEST(GrowthProperty, ExactDistanceMatchesBruteForce) {
  Rng rng(1618);
  for (double alpha : {0.1, 0.5, 1.0}) {
    for (int rep = 0; rep < 30; ++rep) {
      std::int64_t l = 2 + static_cast<std::int64_t>(rng.uniform_below(4));
      auto q = testsupport::random_pmf(rng, l);
      double lp = distance_to_expprop_exact(q, alpha);
      double brute = testsupport::brute_growth_distance(q.weights(), alpha);
      EXPECT_NEAR(lp, brute, 1e-9) << "alpha=" << alpha << " rep=" << rep;
    }
  }
}

TEST(GrowthProperty, DistanceBoundedByFixupMovement) {
  // The exact distance never exceeds what the repair operation moves, and
  // members sit at distance zero.
  Rng rng(2718);
  for (int rep = 0; rep < 20; ++rep) {
    auto q = testsupport::random_pmf(rng, 6);
    double alpha = 0.5;
    double dist = distance_to_expprop_exact(q, alpha);
    double moved = tv_distance(q, fixup(q, alpha));
    EXPECT_LE(dist, moved + 1e-9);
  }
  EXPECT_NEAR(distance_to_expprop_exact(Pmf({0.5, 0.3, 0.2}), 0.2), 0.0,
              1e-10);
}

}  // namespace
