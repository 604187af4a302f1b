#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/random_instances.hpp"
#include "vrp2/dp.hpp"
#include "vrp2/oracle.hpp"

using namespace vrp2;

TEST(Oracle, LineInstance) {
  EXPECT_EQ(brute_force(vrp2::testing::line_instance(2, 2)).cost, 8);
}

TEST(Oracle, ZeroCosts) {
  Instance inst = vrp2::testing::zero_instance(4, 2);
  TwoRouteSolution sol = brute_force(inst);
  EXPECT_EQ(sol.cost, 0);
  EXPECT_TRUE(check_feasibility(inst, sol).feasible());
}

TEST(Oracle, DemandAboveBothCapacities) {
  Instance base = vrp2::testing::line_instance(3, 3);
  auto cs = base.customers;
  cs[1].demand = 4;
  EXPECT_THROW(brute_force(make_instance(base.fleet, base.costs, cs)), InfeasibleError);
}

TEST(Oracle, RefusesLargeInstances) {
  Instance inst = vrp2::testing::zero_instance(10, 2);
  EXPECT_THROW(brute_force(inst), SizeError);
}

// Exact solver and enumeration agree on cost, and on the visit list whenever
// the optimum is finite (both break ties lexicographically).
TEST(OracleProperty, AgreesWithExactSolver) {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 120; ++round) {
    vrp2::testing::RandomSpec spec = vrp2::testing::random_spec(rng, 2, 6);
    Instance inst = vrp2::testing::random_instance(rng, spec);
    TwoRouteSolution a = solve_exact(inst);
    TwoRouteSolution b = brute_force(inst);
    ASSERT_EQ(a.cost, b.cost) << vrp2::testing::describe(spec) << " round " << round;
    if (!is_infinite(a.cost)) {
      EXPECT_EQ(a.visits, b.visits) << vrp2::testing::describe(spec);
    }
  }
}

TEST(OracleProperty, AgreesWithEmptyVehicleTwoAllowed) {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 40; ++round) {
    vrp2::testing::RandomSpec spec = vrp2::testing::random_spec(rng, 2, 5);
    Instance inst = vrp2::testing::random_instance(rng, spec);
    DpOptions d;
    d.allow_empty_vehicle2 = true;
    OracleOptions o;
    o.allow_empty_vehicle2 = true;
    EXPECT_EQ(solve_exact(inst, d).cost, brute_force(inst, o).cost) << vrp2::testing::describe(spec);
  }
}
