#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/random_instances.hpp"
#include "vrp2/model.hpp"

using namespace vrp2;
using vrp2::testing::line_instance;
using vrp2::testing::visits_of;

TEST(Cost, AdditionSaturatesAtInfinity) {
  EXPECT_EQ(sat_add(Cost{3}, Cost{4}), 7);
  EXPECT_EQ(sat_add(kInfinity, Cost{1}), kInfinity);
  EXPECT_EQ(sat_add(kInfinity, kInfinity, kInfinity), kInfinity);
  EXPECT_EQ(sat_add(kInfinity - 1, Cost{5}), kInfinity);
  EXPECT_EQ(cost_to_string(kInfinity), "INF");
}

TEST(SwitchCustomer, TakesVehicleOneEndAndVehicleTwoStart) {
  Fleet f{{5, 5}, NodeId{3}, NodeId{9}, NodeId{10}, NodeId{4}};
  SegmentCustomer z = make_switch_customer(f);
  EXPECT_EQ(z.id, 0);
  EXPECT_EQ(z.left, NodeId{9});
  EXPECT_EQ(z.right, NodeId{10});
  EXPECT_EQ(z.traversal(Vehicle::One, Orientation::FromLeft), 0);
  EXPECT_EQ(z.traversal(Vehicle::One, Orientation::FromRight), kInfinity);
  EXPECT_EQ(z.traversal(Vehicle::Two, Orientation::FromLeft), 0);
  EXPECT_EQ(z.traversal(Vehicle::Two, Orientation::FromRight), kInfinity);
  EXPECT_EQ(z.demand, 0);
}

TEST(SwitchCustomer, SingleDepotCollapses) {
  SegmentCustomer z = make_switch_customer(make_single_depot_fleet(NodeId{0}, 1, 1));
  EXPECT_EQ(z.left, NodeId{0});
  EXPECT_EQ(z.right, NodeId{0});
  EXPECT_EQ(z.demand, 0);
}

TEST(Evaluate, LineInstanceExample) {
  Instance inst = line_instance();
  auto ev = evaluate_solution(inst, visits_of({2, 3, 0, 1}));
  EXPECT_EQ(ev.cost, 8);
  EXPECT_EQ(ev.loads[0], 2);
  EXPECT_EQ(ev.loads[1], 1);
  EXPECT_EQ(evaluate_solution(inst, visits_of({1, 2, 0, 3})).cost, 10);
}

TEST(Evaluate, ZeroCostsGiveZero) {
  Instance inst = vrp2::testing::zero_instance(4, 3);
  EXPECT_EQ(evaluate_solution(inst, visits_of({4, 2, 0, 1, 3})).cost, 0);
  EXPECT_EQ(evaluate_solution(inst, visits_of({1, 0, 2, 3, 4})).cost, 0);
}

TEST(Evaluate, SwitchFromRightIsInfinite) {
  Instance inst = line_instance();
  std::vector<Visit> v = visits_of({2, 3, 0, 1});
  v[2].dir = Orientation::FromRight;
  EXPECT_EQ(evaluate_solution(inst, v).cost, kInfinity);
}

TEST(Evaluate, RejectsMalformedSequences) {
  Instance inst = line_instance();
  EXPECT_THROW(evaluate_solution(inst, visits_of({0, 1, 2, 3})), StructureError);
  EXPECT_THROW(evaluate_solution(inst, visits_of({1, 1, 0, 3})), StructureError);
  EXPECT_THROW(evaluate_solution(inst, visits_of({1, 2, 0})), StructureError);
  EXPECT_THROW(evaluate_solution(inst, visits_of({1, 2, 0, 4})), StructureError);
}

TEST(Feasibility, LineInstance) {
  Instance inst = line_instance();
  auto ok = check_feasibility(inst, visits_of({1, 2, 0, 3}));
  EXPECT_TRUE(ok.feasible());
  EXPECT_EQ(ok.loads[0], 2);
  EXPECT_EQ(ok.loads[1], 1);

  auto over = check_feasibility(inst, visits_of({1, 2, 3, 0}));
  EXPECT_FALSE(over.feasible());
  EXPECT_EQ(over.loads[0], 3);
  EXPECT_FALSE(over.capacity_ok[0]);
}

TEST(Feasibility, FixedItemOnWrongSide) {
  Instance base = line_instance();
  auto cs = base.customers;
  cs[2].fixed_to = Vehicle::One;
  Instance inst = make_instance(base.fleet, base.costs, cs, "fixed");
  auto r = check_feasibility(inst, visits_of({1, 2, 0, 3}));
  EXPECT_FALSE(r.feasible());
  ASSERT_EQ(r.misplaced_fixed.size(), 1u);
  EXPECT_EQ(r.misplaced_fixed[0], 3);
}

TEST(Instance, RejectsBadInput) {
  Instance base = line_instance();
  auto cs = base.customers;
  cs[0].id = 5;
  EXPECT_THROW(make_instance(base.fleet, base.costs, cs), Error);
  EXPECT_THROW(make_instance(make_single_depot_fleet(NodeId{0}, 1, 1), base.costs, base.customers),
               InfeasibleError);
  auto neg = std::make_shared<CostModel>(*base.costs);
  neg->c1.at(0, 1) = -1;
  EXPECT_THROW(make_instance(base.fleet, neg, base.customers), Error);
}

// Flipping one customer changes the cost only through its traversal term and
// its two incident arcs.
TEST(EvaluateProperty, FlipIsLocal) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    vrp2::testing::RandomSpec spec = vrp2::testing::random_spec(rng, 3, 8);
    spec.segments = true;
    spec.infinite_arc_prob = 0;
    Instance inst = vrp2::testing::random_instance(rng, spec);
    TwoRouteSolution sol = vrp2::testing::random_solution(inst, rng);
    const std::size_t sw = sol.switch_position();
    std::uniform_int_distribution<std::size_t> pick(0, sol.visits.size() - 1);
    std::size_t p = pick(rng);
    if (p == sw) continue;
    auto local = [&](const std::vector<Visit>& vs) {
      const Vehicle m = p < sw ? Vehicle::One : Vehicle::Two;
      const SegmentCustomer& c = inst.customer(vs[p].id);
      NodeId before = p == 0 ? inst.fleet.v1_start : inst.customer(vs[p - 1].id).exit(vs[p - 1].dir);
      NodeId after = p + 1 == vs.size() ? inst.fleet.v2_end : inst.customer(vs[p + 1].id).entry(vs[p + 1].dir);
      return inst.arc(m, before, c.entry(vs[p].dir)) + c.traversal(m, vs[p].dir) +
             inst.arc(m, c.exit(vs[p].dir), after);
    };
    std::vector<Visit> flipped = sol.visits;
    flipped[p] = reversed(flipped[p]);
    const Cost a = evaluate_solution(inst, sol.visits).cost;
    const Cost b = evaluate_solution(inst, flipped).cost;
    if (is_infinite(a) || is_infinite(b)) continue;
    EXPECT_EQ(b - a, local(flipped) - local(sol.visits));
  }
}

TEST(EvaluateProperty, ZeroMatricesLeaveTraversalSum) {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 100; ++round) {
    vrp2::testing::RandomSpec spec = vrp2::testing::random_spec(rng, 2, 8);
    spec.segments = true;
    spec.infinite_arc_prob = 0;
    Instance rnd = vrp2::testing::random_instance(rng, spec);
    auto zero = std::make_shared<CostModel>();
    zero->c1 = CostMatrix(rnd.costs->dimension());
    zero->c2 = zero->c1;
    Instance inst = make_instance(rnd.fleet, zero, rnd.customers);
    TwoRouteSolution sol = vrp2::testing::random_solution(inst, rng);
    Cost sum = 0;
    Vehicle m = Vehicle::One;
    for (const Visit& v : sol.visits) {
      sum = sat_add(sum, inst.customer(v.id).traversal(m, v.dir));
      if (v.id == 0) m = Vehicle::Two;
    }
    EXPECT_EQ(sol.cost, sum);
  }
}
