#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "hotelling/generators.hpp"
#include "oracles.hpp"

using namespace hotelling;
using Q = Rational;
using ProfileQ = LocationProfile<Q>;

namespace {

std::vector<Q> sorted_gaps(const ProfileQ& p) {
  auto g = gap_vector(p).values();
  std::sort(g.begin(), g.end());
  return g;
}

bool contains(const std::vector<CanonicalProfile<Q>>& list, const ProfileQ& p) {
  const auto c = canonicalize(p);
  return std::find(list.begin(), list.end(), c) != list.end();
}

}  // namespace

TEST(EqualSpacing, Examples) {
  EXPECT_EQ(equal_spacing<Q>(2).values(), (std::vector<Q>{0, Q(1, 2)}));
  const auto three = equal_spacing<Q>(3);
  EXPECT_EQ(three.values(), (std::vector<Q>{0, Q(1, 3), Q(2, 3)}));
  EXPECT_TRUE(gap_condition(three).holds);
  EXPECT_EQ(profit_closed_form(equal_spacing<Q>(5)).values(), std::vector<Q>(5, Q(1, 5)));
  EXPECT_THROW(equal_spacing<Q>(1), DomainError);
}

TEST(EqualSpacing, AlwaysSatisfiesTheCondition) {
  for (std::size_t n = 2; n <= 40; ++n) {
    EXPECT_TRUE(gap_condition(equal_spacing<Q>(n)).holds) << n;
    EXPECT_TRUE(gap_condition(equal_spacing<double>(n)).holds) << n;
  }
  for (std::size_t n = 2; n <= 12; ++n) EXPECT_TRUE(is_equilibrium(equal_spacing<Q>(n))) << n;
}

TEST(PairedConfiguration, Examples) {
  const auto m2 = paired_configuration<Q>(2);
  EXPECT_EQ(m2.values(), (std::vector<Q>{0, 0, Q(1, 2), Q(1, 2)}));
  EXPECT_TRUE(gap_condition(m2).holds);
  EXPECT_TRUE(is_equilibrium(m2));

  const auto m3 = paired_configuration<Q>(3);
  EXPECT_EQ(m3.values(), (std::vector<Q>{0, 0, Q(1, 3), Q(1, 3), Q(2, 3), Q(2, 3)}));
  EXPECT_TRUE(gap_condition(m3).holds);
  EXPECT_TRUE(is_equilibrium(m3));

  EXPECT_TRUE(is_equilibrium(ProfileQ::from_values({0, 0, Q(1, 2)})));
  EXPECT_THROW(paired_configuration<Q>(1), DomainError);
}

TEST(PairedConfiguration, BindsWithEquality) {
  for (std::size_t m = 2; m <= 10; ++m) {
    const auto r = gap_condition(paired_configuration<Q>(m));
    ASSERT_TRUE(r.holds);
    ASSERT_EQ(r.max_gap, Q(1, static_cast<std::int64_t>(m)));
    for (const auto& g : r.per_k) ASSERT_EQ(g.sum, r.max_gap);
    ASSERT_EQ(max_stack_size(paired_configuration<Q>(m)), 2u);
  }
}

TEST(SampleRandom, DeterministicSortedAndOnGrid) {
  EXPECT_EQ(sample_random<Q>(4, 7), sample_random<Q>(4, 7));
  EXPECT_EQ(sample_random<double>(4, 7), sample_random<double>(4, 7));
  EXPECT_FALSE(sample_random<Q>(6, 7) == sample_random<Q>(6, 8));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto p = sample_random<Q>(2 + seed % 9, seed);
    for (std::size_t k = 0; k < p.size(); ++k) {
      ASSERT_GE(p[k].value(), 0);
      ASSERT_LT(p[k].value(), 1);
      ASSERT_EQ(boost::multiprecision::denominator(Q(p[k].value() * 360)), 1);
      if (k > 0) ASSERT_LE(p[k - 1].value(), p[k].value());
    }
    const auto d = sample_random<double>(3, seed);
    ASSERT_TRUE(std::is_sorted(d.positions().begin(), d.positions().end()));
  }
}

TEST(SampleEquilibrium, TwoVendorsAcceptFirstDraw) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = sample_equilibrium<Q>(2, seed, 10);
    ASSERT_FALSE(r.exhausted());
    ASSERT_EQ(r.tries, 1u);
  }
}

TEST(SampleEquilibrium, AcceptedDrawsAreOracleEquilibria) {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto r = sample_equilibrium<Q>(n, seed, 100000);
      ASSERT_FALSE(r.exhausted()) << n << " " << seed;
      const auto& p = *r.profile;
      ASSERT_EQ(p[0].value(), 0);
      ASSERT_EQ(gap_vector(p).sum(), 1);
      ASSERT_TRUE(gap_condition(p).holds);
      ASSERT_TRUE(is_equilibrium(p));
    }
  }
  const auto fr = sample_equilibrium<double>(5, 3, 100000);
  ASSERT_FALSE(fr.exhausted());
  EXPECT_TRUE(is_equilibrium(*fr.profile));
}

TEST(SampleEquilibrium, DeterministicPerSeed) {
  const auto a = sample_equilibrium<Q>(6, 42, 100000);
  const auto b = sample_equilibrium<Q>(6, 42, 100000);
  ASSERT_FALSE(a.exhausted());
  EXPECT_EQ(*a.profile, *b.profile);
  EXPECT_EQ(a.tries, b.tries);
}

TEST(SampleEquilibrium, ExhaustionIsAResultNotAnError) {
  // Two tries at n = 40 essentially never satisfy the condition.
  const auto r = sample_equilibrium<Q>(40, 1, 2);
  EXPECT_TRUE(r.exhausted());
  EXPECT_EQ(r.tries, 2u);
  EXPECT_EQ(r.acceptance_rate(), 0.0);
}

TEST(Canonicalize, Examples) {
  EXPECT_EQ(canonicalize(ProfileQ::from_values({Q(1, 4), Q(3, 4)})).profile().values(), (std::vector<Q>{0, Q(1, 2)}));
  EXPECT_EQ(canonicalize(ProfileQ::from_values({0, Q(1, 10), Q(1, 5)})).profile().values(),
            (std::vector<Q>{0, Q(1, 10), Q(1, 5)}));
  EXPECT_EQ(canonicalize(ProfileQ::from_values({0, Q(4, 5), Q(9, 10)})).profile().values(),
            (std::vector<Q>{0, Q(1, 10), Q(1, 5)}));
}

TEST(Canonicalize, IdempotentAndInvariant) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto xs = oracle::random_grid_positions(rng, n, 24);
    const auto p = ProfileQ::from_values(xs);
    const auto c = canonicalize(p);
    ASSERT_EQ(c.profile()[0].value(), 0);
    ASSERT_EQ(canonicalize(c.profile()), c);

    const Q theta = oracle::random_grid_positions(rng, 1, 48)[0];
    std::vector<Q> moved;
    for (const auto& x : xs) moved.push_back(trial % 2 ? Q(x + theta) : Q(theta - x));
    const auto pm = ProfileQ::from_values(moved);
    ASSERT_EQ(canonicalize(pm), c);

    ASSERT_EQ(sorted_gaps(c.profile()), sorted_gaps(p));
    ASSERT_EQ(gap_condition(c.profile()).holds, gap_condition(p).holds);
    ASSERT_EQ(is_equilibrium(c.profile()), is_equilibrium(p));
  }
}

TEST(GridEnumerate, ThreeVendorsHalfGrid) {
  const auto r = grid_enumerate_equilibria<Q>(3, 2);
  ASSERT_FALSE(r.refused);
  EXPECT_TRUE(contains(r.equilibria, ProfileQ::from_values({0, Q(1, 2), Q(1, 2)})));
  EXPECT_TRUE(contains(r.equilibria, ProfileQ::from_values({0, 0, Q(1, 2)})));
  EXPECT_FALSE(contains(r.equilibria, ProfileQ::from_values({0, 0, 0})));
}

TEST(GridEnumerate, FullCrossCheckThreeVendorsSixthGrid) {
  const auto r = grid_enumerate_equilibria<Q>(3, 6);
  ASSERT_FALSE(r.refused);
  ASSERT_FALSE(r.equilibria.empty());
  for (const auto& c : r.equilibria) ASSERT_TRUE(is_equilibrium(c.profile()));
  std::size_t visited = 0;
  for_each_grid_profile<Q>(3, 6, [&](const ProfileQ& p) {
    ++visited;
    ASSERT_EQ(contains(r.equilibria, p), is_equilibrium(p));
  });
  EXPECT_EQ(visited, 21u);  // multisets of 2 from 6 grid points
}

TEST(GridEnumerate, EveryTwoVendorProfileIsListed) {
  const auto r = grid_enumerate_equilibria<Q>(2, 4);
  for_each_grid_profile<Q>(2, 4, [&](const ProfileQ& p) { ASSERT_TRUE(contains(r.equilibria, p)); });
  // {0,0}, {0,1/4}, {0,1/2} up to rotation and reflection.
  EXPECT_EQ(r.equilibria.size(), 3u);
}

TEST(GridEnumerate, SortedUniqueAndClosed) {
  const auto r = grid_enumerate_equilibria<Q>(5, 8);
  ASSERT_TRUE(std::is_sorted(r.equilibria.begin(), r.equilibria.end()));
  ASSERT_EQ(std::adjacent_find(r.equilibria.begin(), r.equilibria.end()), r.equilibria.end());
  for (const auto& c : r.equilibria) ASSERT_EQ(canonicalize(c.profile()), c);
}

TEST(GridEnumerate, RefusesOverBudget) {
  const auto r = grid_enumerate_equilibria<Q>(6, 50, 1000);
  EXPECT_TRUE(r.refused);
  EXPECT_EQ(r.candidate_count, grid_candidate_count(6, 50));
  EXPECT_EQ(grid_candidate_count(6, 50), 28989675u);  // C(55, 6)
  EXPECT_TRUE(r.equilibria.empty());
  EXPECT_THROW(grid_enumerate_equilibria<Q>(1, 4), DomainError);
}
