#pragma once

// Exhaustive reference solver for small instances. It enumerates every order
// of the customers and the switch, every orientation, and prices each
// candidate with evaluate_solution only, so it shares nothing with the
// dynamic programming transitions it is used to check.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "vrp2/model.hpp"

namespace vrp2 {

struct OracleOptions {
  int cap = 9;  // customers, switch excluded
  bool allow_empty_vehicle2 = false;
};

namespace detail {

// Entering such a customer from either side reaches the same node at the
// same price, so only FromLeft needs to be tried.
inline bool orientation_free(const SegmentCustomer& c) {
  return c.left == c.right && c.traverse[0][0] == c.traverse[0][1] &&
         c.traverse[1][0] == c.traverse[1][1];
}

}  // namespace detail

// Minimum over all feasible routes; among equal costs the lexicographically
// smallest visit sequence wins, matching the exact solver's tie-break.
inline TwoRouteSolution brute_force(const Instance& inst, OracleOptions options = {}) {
  const int n = inst.size();
  if (n > options.cap)
    throw SizeError("oracle accepts at most " + std::to_string(options.cap) + " customers, got " +
                    std::to_string(n));
  if (n == 0) throw InfeasibleError("instance has no customers");

  std::vector<int> order(static_cast<std::size_t>(n) + 1);
  std::iota(order.begin(), order.end(), 0);

  bool found = false;
  TwoRouteSolution best;
  std::vector<Visit> visits(order.size());
  std::vector<std::size_t> flexible;  // positions whose orientation matters

  do {
    if (order.front() == 0) continue;
    if (order.back() == 0 && !options.allow_empty_vehicle2) continue;
    for (std::size_t p = 0; p < order.size(); ++p) visits[p] = {order[p], Orientation::FromLeft};
    FeasibilityReport feas = check_feasibility(inst, visits);
    if (!feas) continue;

    flexible.clear();
    for (std::size_t p = 0; p < order.size(); ++p)
      if (order[p] != 0 && !detail::orientation_free(inst.customer(order[p]))) flexible.push_back(p);

    // Orientation vectors in lexicographic order: the earliest position is
    // the most significant bit, FromLeft before FromRight.
    const std::uint64_t combos = std::uint64_t{1} << flexible.size();
    for (std::uint64_t bits = 0; bits < combos; ++bits) {
      for (std::size_t k = 0; k < flexible.size(); ++k) {
        bool right = (bits >> (flexible.size() - 1 - k)) & 1;
        visits[flexible[k]].dir = right ? Orientation::FromRight : Orientation::FromLeft;
      }
      Evaluation ev = evaluate_solution(inst, visits);
      if (!found || ev.cost < best.cost || (ev.cost == best.cost && visits < best.visits)) {
        found = true;
        best.visits = visits;
        best.cost = ev.cost;
        best.loads = ev.loads;
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));

  if (!found) throw InfeasibleError("no split of customers respects capacities and fixed items");
  return best;
}

}  // namespace vrp2
