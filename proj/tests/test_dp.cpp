#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/random_instances.hpp"
#include "vrp2/dp.hpp"
#include "vrp2/oracle.hpp"

using namespace vrp2;
using vrp2::testing::line_instance;
using vrp2::testing::visits_of;

TEST(TransitionCost, FourOrientationBranches) {
  auto costs = std::make_shared<CostModel>();
  costs->c1 = CostMatrix(5);
  costs->c2 = CostMatrix(5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (i != j) {
        costs->c1.at(i, j) = 10 * i + j;
        costs->c2.at(i, j) = 100 * i + j;
      }
  std::vector<SegmentCustomer> cs = {make_customer(1, NodeId{1}, NodeId{2}, {1, 2, 3, 4}, 1),
                                     make_customer(2, NodeId{3}, NodeId{4}, {5, 6, 7, 8}, 1)};
  Instance inst = make_instance(make_single_depot_fleet(NodeId{0}, 2, 2), costs, cs);
  const Visit iL{1, Orientation::FromLeft}, iR{1, Orientation::FromRight};
  const Visit jL{2, Orientation::FromLeft}, jR{2, Orientation::FromRight};
  // l1_L(i) + c1(R(i), L(j))
  EXPECT_EQ(transition_cost(inst, iL, jL, Vehicle::One), 1 + costs->c1.at(2, 3));
  // l2_R(i) + c2(L(i), R(j))
  EXPECT_EQ(transition_cost(inst, iR, jR, Vehicle::Two), 4 + costs->c2.at(1, 4));
  EXPECT_EQ(transition_cost(inst, iL, jR, Vehicle::One), 1 + costs->c1.at(2, 4));
  EXPECT_EQ(transition_cost(inst, iR, jL, Vehicle::Two), 4 + costs->c2.at(1, 3));
}

TEST(TransitionCost, ZeroCase) {
  Instance inst = vrp2::testing::zero_instance(2, 3);
  EXPECT_EQ(transition_cost(inst, {1, Orientation::FromLeft}, {2, Orientation::FromRight}, Vehicle::Two), 0);
}

TEST(ExactSolver, LineInstanceOptimum) {
  Instance inst = line_instance(2, 2);
  TwoRouteSolution sol = solve_exact(inst);
  EXPECT_EQ(sol.cost, 8);
  EXPECT_NE(sol.visits.front().id, 0);
  EXPECT_TRUE(check_feasibility(inst, sol).feasible());
  // Equal-cost optima are broken towards the lexicographically smallest visit list.
  EXPECT_EQ(sol.visits, visits_of({1, 0, 2, 3}));
}

TEST(ExactSolver, ForcedSplitByFixedItems) {
  Instance base = line_instance(5, 5);
  auto cs = base.customers;
  cs.pop_back();
  cs[0].fixed_to = Vehicle::Two;
  cs[1].fixed_to = Vehicle::One;
  Instance inst = make_instance(base.fleet, base.costs, cs);
  TwoRouteSolution sol = solve_exact(inst);
  EXPECT_EQ(sol.visits, visits_of({2, 0, 1}));
  EXPECT_EQ(sol.cost, 2 + 2 + 1 + 1);
}

TEST(ExactSolver, SizeAndInfeasibility) {
  std::vector<SegmentCustomer> cs;
  for (int k = 1; k <= 20; ++k) cs.push_back(make_point_customer(k, NodeId{0}, 0));
  auto costs = std::make_shared<CostModel>(CostModel{CostMatrix(1), CostMatrix(1)});
  Instance big = make_instance(make_single_depot_fleet(NodeId{0}, 1, 1), costs, cs);
  EXPECT_THROW(solve_exact(big), SizeError);

  Instance base = line_instance(3, 3);
  auto heavy = base.customers;
  heavy[0].demand = 4;
  Instance inf = make_instance(base.fleet, base.costs, heavy);
  EXPECT_THROW(solve_exact(inf), InfeasibleError);
}

TEST(ExactSolver, ForbiddenArcsGiveInfiniteCostNotError) {
  Instance base = line_instance(2, 2);
  auto costs = std::make_shared<CostModel>();
  costs->c1 = CostMatrix(4, kInfinity);
  costs->c2 = costs->c1;
  Instance inst = make_instance(base.fleet, costs, base.customers);
  TwoRouteSolution sol = solve_exact(inst);
  EXPECT_EQ(sol.cost, kInfinity);
  EXPECT_TRUE(check_feasibility(inst, sol).feasible());
}

TEST(ExactSolver, SolveBelowMatchesSolve) {
  std::mt19937_64 rng(5);
  ExactSolver solver;
  for (int round = 0; round < 150; ++round) {
    Instance inst = vrp2::testing::random_instance(rng, vrp2::testing::random_spec(rng, 2, 9));
    const TwoRouteSolution full = solver.solve(inst);
    if (is_infinite(full.cost)) continue;
    auto at = solver.solve_below(inst, full.cost);
    EXPECT_FALSE(at.has_value());
    auto above = solver.solve_below(inst, full.cost + 1);
    ASSERT_TRUE(above.has_value());
    EXPECT_EQ(above->cost, full.cost);
    EXPECT_EQ(above->visits, full.visits);
  }
}

// Bellman optimality and capacity gates on the stored tables.
TEST(ExactSolverProperty, TablesSatisfyRecursion) {
  std::mt19937_64 rng(6);
  ExactSolver solver;
  for (int round = 0; round < 40; ++round) {
    Instance inst = vrp2::testing::random_instance(rng, vrp2::testing::random_spec(rng, 2, 7));
    solver.solve(inst);
    const DpTables& t = solver.tables();
    const int n = t.items;
    const Demand W2 = inst.fleet.capacity[1];
    for (SubsetMask J = 0; J <= t.full_mask(); ++J) {
      for (int i = 0; i < n; ++i) {
        if (J & (SubsetMask{1} << i)) continue;
        const Vehicle m = (i != 0 && (J & 1)) ? Vehicle::One : Vehicle::Two;
        for (Orientation o : {Orientation::FromLeft, Orientation::FromRight}) {
          const Cost v = t.at(o, i, J);
          if (!(J & 1) && t.subset_demand[J] + inst.customer(i).demand > W2) {
            EXPECT_EQ(v, kInfinity) << "capacity gate i=" << i << " J=" << J;
          }
          if (i == 0 && o == Orientation::FromRight) {
            EXPECT_EQ(v, kInfinity);
          }
          for (SubsetMask rest = J; rest; rest &= rest - 1) {
            const int j = std::countr_zero(rest);
            for (Orientation oj : {Orientation::FromLeft, Orientation::FromRight}) {
              const Cost next = t.at(oj, j, J & ~(SubsetMask{1} << j));
              if (is_infinite(next) || is_infinite(v)) continue;
              EXPECT_LE(v, sat_add(transition_cost(inst, {i, o}, {j, oj}, m), next));
            }
          }
        }
      }
    }
  }
}

TEST(ExactSolverProperty, NeverStartsWithSwitchAndReevaluates) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 100; ++round) {
    Instance inst = vrp2::testing::random_instance(rng, vrp2::testing::random_spec(rng, 2, 9));
    TwoRouteSolution sol = solve_exact(inst);
    EXPECT_NE(sol.visits.front().id, 0);
    EXPECT_EQ(evaluate_solution(inst, sol.visits).cost, sol.cost);
    EXPECT_TRUE(check_feasibility(inst, sol).feasible());
  }
}
