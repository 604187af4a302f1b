#pragma once

// Random instances and solutions for property tests.

#include <algorithm>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vrp2/model.hpp"

namespace vrp2::testing {

struct RandomSpec {
  int customers = 6;
  bool segments = false;           // customers with L != R and direction-dependent costs
  bool symmetric = true;           // c(a, b) == c(b, a)
  bool separate_vehicle_costs = false;
  bool separate_depots = false;    // four distinct depot nodes
  double infinite_arc_prob = 0;
  double fixed_prob = 0;
  bool tight = false;              // capacities leave no slack for the planted split
  int max_cost = 100;
};

inline RandomSpec random_spec(std::mt19937_64& rng, int min_customers, int max_customers) {
  std::uniform_int_distribution<int> n(min_customers, max_customers);
  std::bernoulli_distribution coin(0.5);
  RandomSpec s;
  s.customers = n(rng);
  s.segments = coin(rng);
  s.symmetric = coin(rng);
  s.separate_vehicle_costs = coin(rng);
  s.separate_depots = coin(rng);
  s.infinite_arc_prob = coin(rng) ? 0.1 : 0.0;
  s.fixed_prob = coin(rng) ? 0.25 : 0.0;
  s.tight = coin(rng);
  return s;
}

inline std::string describe(const RandomSpec& s) {
  return "n=" + std::to_string(s.customers) + (s.segments ? " segments" : " points") +
         (s.symmetric ? " sym" : " asym") + (s.separate_vehicle_costs ? " c1!=c2" : "") +
         (s.separate_depots ? " 4depots" : "") + (s.infinite_arc_prob > 0 ? " inf" : "") +
         (s.fixed_prob > 0 ? " fixed" : "") + (s.tight ? " tight" : " loose");
}

namespace detail {

inline CostMatrix random_matrix(std::mt19937_64& rng, int dim, const RandomSpec& s) {
  std::uniform_int_distribution<Cost> cost(1, s.max_cost);
  std::bernoulli_distribution forbid(s.infinite_arc_prob);
  CostMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (i == j) continue;
      if (s.symmetric && j < i) {
        m.at(i, j) = m.at(j, i);
        continue;
      }
      m.at(i, j) = forbid(rng) ? kInfinity : cost(rng);
    }
  return m;
}

}  // namespace detail

// A feasible instance: capacities and fixed items are built around a planted
// split with at least one customer per vehicle, so n >= 2.
inline Instance random_instance(std::mt19937_64& rng, const RandomSpec& s) {
  const int n = s.customers;
  if (n < 2) throw Error("random_instance needs at least two customers");
  const int depots = s.separate_depots ? 4 : 1;
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<Demand> demand(1, 5);
  std::uniform_int_distribution<Cost> trav(0, s.max_cost / 2);
  std::bernoulli_distribution fixed(s.fixed_prob);
  std::bernoulli_distribution forbid(s.infinite_arc_prob);

  std::vector<int> side(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) side[static_cast<std::size_t>(k)] = coin(rng) ? 1 : 2;
  if (n >= 2) {
    side[0] = 1;
    side[static_cast<std::size_t>(n - 1)] = 2;
    std::shuffle(side.begin(), side.end(), rng);
  }

  std::vector<SegmentCustomer> customers;
  int next_node = depots;
  Demand load[2] = {0, 0};
  for (int k = 0; k < n; ++k) {
    const int id = k + 1;
    const bool seg = s.segments && coin(rng);
    const NodeId left{next_node++};
    const NodeId right = seg ? NodeId{next_node++} : left;
    std::array<Cost, 4> t{0, 0, 0, 0};
    if (seg) {
      const Cost base = trav(rng);
      for (auto& x : t) x = base + trav(rng) / 4;
      if (forbid(rng)) t[static_cast<std::size_t>(coin(rng) ? 1 : 3)] = kInfinity;
    } else if (coin(rng)) {
      const Cost c1 = trav(rng), c2 = s.separate_vehicle_costs ? trav(rng) : c1;
      t = {c1, c1, c2, c2};
    }
    const Demand w = demand(rng);
    const int v = side[static_cast<std::size_t>(k)];
    load[v - 1] += w;
    std::optional<Vehicle> f;
    if (fixed(rng)) f = v == 1 ? Vehicle::One : Vehicle::Two;
    customers.push_back(make_customer(id, left, right, t, w, f));
  }

  const int dim = next_node;
  auto costs = std::make_shared<CostModel>();
  costs->c1 = detail::random_matrix(rng, dim, s);
  costs->c2 = s.separate_vehicle_costs ? detail::random_matrix(rng, dim, s) : costs->c1;

  std::uniform_int_distribution<Demand> slack(0, std::max<Demand>(1, (load[0] + load[1]) / 2));
  const Demand w1 = load[0] + (s.tight ? 0 : slack(rng));
  const Demand w2 = load[1] + (s.tight ? 0 : slack(rng));
  Fleet fleet = s.separate_depots ? Fleet{{w1, w2}, NodeId{0}, NodeId{1}, NodeId{2}, NodeId{3}}
                                  : make_single_depot_fleet(NodeId{0}, w1, w2);
  return make_instance(fleet, std::move(costs), std::move(customers), "random " + describe(s));
}

// A random capacity- and fixed-feasible solution with random orientations.
inline TwoRouteSolution random_solution(const Instance& inst, std::mt19937_64& rng, int attempts = 1000) {
  std::bernoulli_distribution coin(0.5);
  for (int a = 0; a < attempts; ++a) {
    std::vector<int> ids;
    for (const auto& c : inst.customers) ids.push_back(c.id);
    std::shuffle(ids.begin(), ids.end(), rng);
    std::vector<Visit> route[2];
    Demand left[2] = {inst.fleet.capacity[0], inst.fleet.capacity[1]};
    for (const auto& c : inst.customers)
      if (c.fixed_to) left[index_of(*c.fixed_to)] -= c.demand;
    bool ok = left[0] >= 0 && left[1] >= 0;
    for (int id : ids) {
      const SegmentCustomer& c = inst.customer(id);
      int v;
      if (c.fixed_to) {
        v = index_of(*c.fixed_to);
      } else {
        v = coin(rng) ? 0 : 1;
        if (c.demand > left[v]) v = 1 - v;
        if (c.demand > left[v]) {
          ok = false;
          break;
        }
        left[v] -= c.demand;
      }
      route[v].push_back({id, coin(rng) ? Orientation::FromRight : Orientation::FromLeft});
    }
    if (!ok || route[0].empty() || route[1].empty()) continue;
    std::vector<Visit> visits = route[0];
    visits.push_back({0, Orientation::FromLeft});
    visits.insert(visits.end(), route[1].begin(), route[1].end());
    return make_solution(inst, std::move(visits));
  }
  throw Error("no random feasible solution found");
}

// Euclidean instance on a line or plane with point customers, loose capacity.
inline Instance random_euclidean_instance(std::mt19937_64& rng, int n, Demand slack = 0) {
  std::uniform_int_distribution<int> coord(0, 1000);
  std::vector<std::pair<int, int>> pts(static_cast<std::size_t>(n) + 1);
  for (auto& p : pts) p = {coord(rng), coord(rng)};
  auto costs = std::make_shared<CostModel>();
  costs->c1 = CostMatrix(n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      if (i != j) {
        const double dx = pts[static_cast<std::size_t>(i)].first - pts[static_cast<std::size_t>(j)].first;
        const double dy = pts[static_cast<std::size_t>(i)].second - pts[static_cast<std::size_t>(j)].second;
        costs->c1.at(i, j) = static_cast<Cost>(std::llround(std::hypot(dx, dy)));
      }
  costs->c2 = costs->c1;
  std::vector<SegmentCustomer> customers;
  for (int k = 1; k <= n; ++k) customers.push_back(make_point_customer(k, NodeId{k}, 1));
  const Demand half = (n + 1) / 2 + slack;
  return make_instance(make_single_depot_fleet(NodeId{0}, half, half), std::move(costs), std::move(customers),
                       "euclid" + std::to_string(n));
}

}  // namespace vrp2::testing
