#pragma once

// Two-period TSP as a two-vehicle instance. Each customer needed in both
// periods is duplicated, one copy fixed to each vehicle. In the balanced
// variant every flexible customer has demand 1 and both capacities are
// ceil(n / 2), so the flexible customers split n/2 : n/2 or
// (n-1)/2 : (n+1)/2 and the period visit counts differ by at most one.

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vrp2/model.hpp"

namespace vrp2 {

struct Point2 {
  double x = 0;
  double y = 0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct TwoPeriodInstance {
  std::string name;
  int depot = 0;                   // node index
  std::vector<int> both_periods;   // node indices visited in both periods
  std::vector<int> single_period;  // node indices visited in exactly one
  CostMatrix distances;
  bool balanced = true;
  // Present when distances were derived from coordinates.
  std::optional<std::vector<Point2>> coordinates;

  friend bool operator==(const TwoPeriodInstance&, const TwoPeriodInstance&) = default;
};

// Closed tours, each starting and ending at the depot.
struct PeriodTours {
  std::vector<int> period1;
  std::vector<int> period2;
};

inline void validate(const TwoPeriodInstance& tp) {
  const int dim = tp.distances.dimension();
  auto in_range = [dim](int v) { return v >= 0 && v < dim; };
  if (!in_range(tp.depot)) throw Error("depot node out of range");
  std::set<int> seen;
  for (const auto* list : {&tp.both_periods, &tp.single_period})
    for (int v : *list) {
      if (!in_range(v)) throw Error("customer node " + std::to_string(v) + " out of range");
      if (!seen.insert(v).second)
        throw Error("customer " + std::to_string(v) + " listed twice or in both period sets");
    }
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (tp.distances.at(i, j) < 0) throw Error("negative distance");
}

// Node of a two-vehicle customer id: flexible customers come first in the
// order of single_period, then the two copies of each both-period customer
// (vehicle 1 copy, vehicle 2 copy).
inline int period_customer_node(const TwoPeriodInstance& tp, int id) {
  const int n = static_cast<int>(tp.single_period.size());
  if (id <= n) return tp.single_period[static_cast<std::size_t>(id - 1)];
  return tp.both_periods[static_cast<std::size_t>((id - n - 1) / 2)];
}

inline Instance build_instance(const TwoPeriodInstance& tp) {
  validate(tp);
  const int n = static_cast<int>(tp.single_period.size());
  auto costs = std::make_shared<CostModel>(CostModel{tp.distances, tp.distances});
  const Demand cap = tp.balanced ? (n + 1) / 2 : 0;
  Fleet fleet = make_single_depot_fleet(NodeId{tp.depot}, cap, cap);

  std::vector<SegmentCustomer> customers;
  customers.reserve(static_cast<std::size_t>(n) + 2 * tp.both_periods.size());
  int id = 1;
  for (int v : tp.single_period) customers.push_back(make_point_customer(id++, NodeId{v}, tp.balanced ? 1 : 0));
  for (int v : tp.both_periods) {
    customers.push_back(make_point_customer(id++, NodeId{v}, 0, Vehicle::One));
    customers.push_back(make_point_customer(id++, NodeId{v}, 0, Vehicle::Two));
  }
  return make_instance(fleet, std::move(costs), std::move(customers), tp.name);
}

inline PeriodTours extract_tours(const TwoRouteSolution& sol, const TwoPeriodInstance& tp) {
  PeriodTours tours;
  tours.period1.push_back(tp.depot);
  tours.period2.push_back(tp.depot);
  bool second = false;
  for (const Visit& v : sol.visits) {
    if (v.id == 0) {
      second = true;
      continue;
    }
    (second ? tours.period2 : tours.period1).push_back(period_customer_node(tp, v.id));
  }
  tours.period1.push_back(tp.depot);
  tours.period2.push_back(tp.depot);
  return tours;
}

inline Cost tour_length(const TwoPeriodInstance& tp, const std::vector<int>& tour) {
  Cost total = 0;
  for (std::size_t k = 1; k < tour.size(); ++k)
    total = sat_add(total, tp.distances.at(tour[k - 1], tour[k]));
  return total;
}

// Number of customers on a closed tour, the depot end points excluded.
inline int visit_count(const std::vector<int>& tour) {
  return std::max(0, static_cast<int>(tour.size()) - 2);
}

inline bool check_balance(const PeriodTours& tours, const TwoPeriodInstance&) {
  const int diff = visit_count(tours.period1) - visit_count(tours.period2);
  return diff >= -1 && diff <= 1;
}

}  // namespace vrp2
