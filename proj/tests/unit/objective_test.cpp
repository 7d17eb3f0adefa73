#include <gtest/gtest.h>

#include "../support/reference.hpp"
#include "mapf/objective.hpp"

using namespace mapf;
using mapf::testing::plan_of;

TEST(PlanCost, ReturnAfterLeavingChargesFinalArrival) {
  // Corridor 0..3, target at x=3: reach at t=3, wait, leave at t=5, return at t=7.
  const Plan p = plan_of(0, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {3, 0}, {3, 0}, {2, 0}, {3, 0}});
  EXPECT_EQ(plan_cost(p), 7u);
  Plan padded = p;
  padded.locations.insert(padded.locations.end(), 4, Cell{3, 0});
  EXPECT_EQ(plan_cost(padded), 7u);
}

TEST(Makespan, MaxLength) {
  Solution s{{plan_of(0, {{0, 0}, {1, 0}, {2, 0}}),
              plan_of(1, {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}})}};
  EXPECT_EQ(makespan(s), 5u);
  EXPECT_EQ(makespan(Solution{{plan_of(0, {{0, 0}})}}), 0u);
}

TEST(SumOfCosts, DisjointPathsAndBehaviors) {
  Solution s{{plan_of(0, {{0, 0}, {1, 0}, {2, 0}}), plan_of(1, {{0, 2}, {1, 2}, {2, 2}})}};
  EXPECT_EQ(sum_of_costs(s, TargetBehavior::Stay), 4u);
  EXPECT_EQ(sum_of_costs(s, TargetBehavior::Disappear), 4u);
  EXPECT_EQ(objective_value(s, SemanticsProfile::search_based()), 4u);
  const SemanticsProfile mk(ConflictSet{ConflictKind::Vertex}, TargetBehavior::Stay,
                            Objective::Makespan);
  EXPECT_EQ(objective_value(s, mk), 2u);
}

TEST(SumOfCosts, CrossingWitness) {
  Solution s{{plan_of(0, {{0, 1}, {1, 1}, {2, 1}}), plan_of(1, {{1, 0}, {1, 0}, {1, 1}, {1, 2}})}};
  EXPECT_EQ(sum_of_costs(s, TargetBehavior::Stay), 5u);
  EXPECT_EQ(makespan(s), 3u);
}

TEST(ObjectiveProperty, BoundsOnRandomCanonicalSolutions) {
  mapf::testing::Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const Grid g = mapf::testing::random_grid(rng, 4, 4, 0.1);
    if (g.passable_count() == 0) continue;
    Solution s;
    const std::size_t k = 1 + rng() % 4;
    std::size_t lengths = 0;
    for (std::size_t i = 0; i < k; ++i) {
      s.plans.push_back(canonicalize(mapf::testing::random_walk(rng, g, static_cast<int32_t>(i), rng() % 7)));
      lengths += s.plans.back().length();
    }
    const std::size_t soc = sum_of_costs(s, TargetBehavior::Stay);
    EXPECT_EQ(soc, lengths);
    EXPECT_LE(makespan(s), soc);
    EXPECT_GE(makespan(s) * k, soc);
  }
}
