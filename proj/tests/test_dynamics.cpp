#include <gtest/gtest.h>

#include "hotelling/dynamics.hpp"

using namespace hotelling;
using Q = Rational;
using ProfileQ = LocationProfile<Q>;

TEST(BestResponseStep, Examples) {
  const auto moved = best_response_step(ProfileQ::from_values({0, Q(1, 10), Q(1, 5)}), 1);
  EXPECT_EQ(moved.values(), (std::vector<Q>{0, Q(1, 5), Q(3, 5)}));

  const auto eq = paired_configuration<Q>(3);
  for (std::size_t k = 0; k < eq.size(); ++k) EXPECT_EQ(best_response_step(eq, k), eq);

  const auto two = ProfileQ::from_values({0, Q(1, 10)});
  EXPECT_EQ(best_response_step(two, 0), two);
  EXPECT_EQ(best_response_step(two, 1), two);
}

TEST(RunDynamics, EquilibriumStartConvergesWithoutMoving) {
  for (const auto& start : {equal_spacing<Q>(5), paired_configuration<Q>(2), ProfileQ::from_values({0, 0, Q(1, 2)})}) {
    for (const auto schedule : {Schedule::round_robin(), Schedule::random(5)}) {
      const auto trace = run_dynamics(start, schedule, 1000);
      ASSERT_TRUE(std::holds_alternative<Converged>(trace.outcome));
      EXPECT_EQ(std::get<Converged>(trace.outcome).moves, 0u);
      EXPECT_TRUE(trace.moves.empty());
      EXPECT_EQ(trace.final_profile, start);
    }
  }
}

TEST(RunDynamics, ClusteredStartReachesAnEquilibrium) {
  const auto trace = run_dynamics(ProfileQ::from_values({0, Q(1, 10), Q(1, 5)}), Schedule::round_robin(), 1000);
  ASSERT_TRUE(std::holds_alternative<Converged>(trace.outcome));
  EXPECT_TRUE(gap_condition(trace.final_profile).holds);
  EXPECT_TRUE(is_equilibrium(trace.final_profile));
}

TEST(RunDynamics, DeterministicPerSeed) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto start = sample_random<Q>(5, seed);
    const auto a = run_dynamics(start, Schedule::random(seed), 500);
    const auto b = run_dynamics(start, Schedule::random(seed), 500);
    ASSERT_EQ(a.final_profile, b.final_profile);
    ASSERT_EQ(a.moves.size(), b.moves.size());
    ASSERT_EQ(a.outcome.index(), b.outcome.index());
    for (std::size_t i = 0; i < a.moves.size(); ++i) {
      ASSERT_EQ(a.moves[i].to, b.moves[i].to);
      ASSERT_EQ(a.moves[i].mover, b.moves[i].mover);
    }
  }
}

TEST(RunDynamics, MovesImproveStrictlyAndConserveProfit) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto start = sample_random<Q>(3 + seed % 4, seed);
    const auto schedule = seed % 2 ? Schedule::random(seed) : Schedule::round_robin();
    const auto trace = run_dynamics(start, schedule, 300);

    // Replay the trace and check every move against a fresh best response.
    ProfileQ state = start;
    for (const auto& mv : trace.moves) {
      const auto br = best_response(state, mv.mover);
      ASSERT_TRUE(br.improving);
      ASSERT_EQ(mv.from, state[mv.mover]);
      ASSERT_EQ(mv.to, br.witness);
      ASSERT_EQ(mv.profit_before, br.current_profit);
      ASSERT_EQ(mv.profit_after, br.best_value);
      ASSERT_GT(mv.profit_after, mv.profit_before);
      state = state.relocate(mv.mover, mv.to).first;
      ASSERT_EQ(profit_closed_form(state).sum(), 1);
    }
    ASSERT_EQ(state, trace.final_profile);
    if (std::holds_alternative<Converged>(trace.outcome)) {
      ASSERT_TRUE(gap_condition(trace.final_profile).holds);
      ASSERT_TRUE(is_equilibrium(trace.final_profile));
    }
    if (const auto* c = std::get_if<Cycle>(&trace.outcome)) {
      ASSERT_GT(c->period, 0u);
      ASSERT_EQ(c->first_visit + c->period, trace.moves.size());
    }
  }
}

TEST(RunDynamics, BudgetExhaustionIsReported) {
  // One step cannot confirm convergence for a non-equilibrium start.
  const auto trace = run_dynamics(ProfileQ::from_values({0, Q(1, 10), Q(1, 5)}), Schedule::round_robin(), 1);
  EXPECT_TRUE(std::holds_alternative<BudgetExhausted>(trace.outcome));
  EXPECT_THROW(run_dynamics(ProfileQ::from_values({0, Q(1, 2)}), Schedule::round_robin(), 0), DomainError);
}
