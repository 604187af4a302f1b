#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/random_instances.hpp"
#include "vrp2/dp.hpp"
#include "vrp2/sliding_search.hpp"

using namespace vrp2;
using vrp2::testing::line_instance;
using vrp2::testing::visits_of;

TEST(SweepPositions, FirstPairStraddlesTheSwitch) {
  auto pos = sweep_positions(5, 5, {2, 2});
  ASSERT_FALSE(pos.empty());
  EXPECT_EQ(pos.front(), std::make_pair(1, 5));
  for (auto [p1, p2] : pos) EXPECT_TRUE(legal_windows(5, 5, 2, p1, p2));
}

TEST(SweepPositions, LongStepGivesOnePair) {
  auto pos = sweep_positions(4, 4, {2, 8});
  ASSERT_EQ(pos.size(), 1u);
  EXPECT_EQ(pos.front(), std::make_pair(1, 4));
}

TEST(SweepPositions, CoversEveryLegalPairWithUnitStep) {
  for (int k1 = 1; k1 <= 8; ++k1)
    for (int k2 = 1; k2 <= 8; ++k2)
      for (int s = 1; s <= 3; ++s) {
        auto pos = sweep_positions(k1, k2, {s, 1});
        std::size_t legal = 0;
        for (int p1 = 1; p1 <= k1 + k2; ++p1)
          for (int p2 = 1; p2 <= k1 + k2; ++p2) legal += legal_windows(k1, k2, s, p1, p2);
        EXPECT_EQ(pos.size(), legal) << k1 << " " << k2 << " " << s;
      }
}

TEST(Improve, LineInstanceReachesOptimum) {
  Instance inst = line_instance(2, 2);
  TwoRouteSolution start = make_solution(inst, visits_of({1, 2, 0, 3}));
  ASSERT_EQ(start.cost, 10);
  SlidingOptions opts;
  opts.config = {1, 1};
  TwoRouteSolution out = improve(inst, start, opts);
  EXPECT_EQ(out.cost, 8);
}

TEST(Improve, OptimumIsKept) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 20; ++round) {
    vrp2::testing::RandomSpec spec = vrp2::testing::random_spec(rng, 4, 8);
    Instance inst = vrp2::testing::random_instance(rng, spec);
    TwoRouteSolution opt = solve_exact(inst);
    if (is_infinite(opt.cost)) continue;
    SlidingOptions opts;
    opts.config = {1, 1};
    TwoRouteSolution out = improve(inst, opt, opts);
    EXPECT_EQ(out.cost, opt.cost);
    EXPECT_EQ(out.visits, opt.visits);
  }
}

TEST(Improve, WindowTooLargeForCap) {
  Instance inst = line_instance(2, 2);
  SlidingOptions opts;
  opts.config = {8, 1};
  EXPECT_THROW(improve(inst, make_solution(inst, visits_of({1, 2, 0, 3})), opts), SizeError);
}

// Output never worse, accepted steps strictly better, a second pass finds
// nothing, feasibility is kept, and pruning changes nothing.
TEST(ImproveProperty, MonotoneAndFixpoint) {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 16; ++round) {
    vrp2::testing::RandomSpec spec = vrp2::testing::random_spec(rng, 12, 24);
    spec.tight = false;
    Instance inst = vrp2::testing::random_instance(rng, spec);
    TwoRouteSolution sol = vrp2::testing::random_solution(inst, rng);
    SlidingOptions opts;
    opts.config = {round % 2 ? 2 : 3, 1 + round % 3};
    std::vector<TraceRecord> trace;
    opts.trace = [&](const TraceRecord& r) { trace.push_back(r); };
    TwoRouteSolution out = improve(inst, sol, opts);
    EXPECT_LE(out.cost, sol.cost);
    EXPECT_EQ(evaluate_solution(inst, out.visits).cost, out.cost);
    EXPECT_TRUE(check_feasibility(inst, out).feasible());
    for (const auto& r : trace)
      if (r.accepted) {
        EXPECT_LE(r.small_cost, r.current_cost - 1);
      }

    TwoRouteSolution again = improve(inst, out, opts);
    EXPECT_EQ(again.cost, out.cost);

    SlidingOptions plain = opts;
    plain.prune = false;
    plain.trace = nullptr;
    EXPECT_EQ(improve(inst, sol, plain).visits, out.visits);
  }
}

TEST(ImproveProperty, ContinueModeAlsoReachesFixpoint) {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 6; ++round) {
    Instance inst = vrp2::testing::random_euclidean_instance(rng, 20, 1);
    TwoRouteSolution sol = vrp2::testing::random_solution(inst, rng);
    SlidingOptions opts;
    opts.config = {2, 1};
    opts.restart_on_improve = false;
    TwoRouteSolution out = improve(inst, sol, opts);
    EXPECT_LE(out.cost, sol.cost);
    opts.restart_on_improve = true;
    EXPECT_EQ(improve(inst, out, opts).cost, out.cost);
  }
}
