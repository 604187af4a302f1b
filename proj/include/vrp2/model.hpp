#pragma once

// Instances and solutions of the two-vehicle routing problem.
//
// Both vehicle routes are viewed as one route: vehicle 1 leaves its start
// depot, serves its customers, reaches the switch customer 0 (entered at the
// vehicle 1 end depot, left at the vehicle 2 start depot), and vehicle 2
// serves the rest before reaching its end depot.

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vrp2/cost.hpp"

namespace vrp2 {

struct NodeId {
  int index = 0;

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

enum class Orientation : std::uint8_t { FromLeft = 0, FromRight = 1 };

constexpr Orientation flip(Orientation o) noexcept {
  return o == Orientation::FromLeft ? Orientation::FromRight : Orientation::FromLeft;
}

constexpr int index_of(Orientation o) noexcept { return static_cast<int>(o); }

enum class Vehicle : std::uint8_t { One = 1, Two = 2 };

constexpr int index_of(Vehicle v) noexcept { return v == Vehicle::One ? 0 : 1; }

constexpr Vehicle other(Vehicle v) noexcept {
  return v == Vehicle::One ? Vehicle::Two : Vehicle::One;
}

// One step of a route: which customer, and from which side it is entered.
struct Visit {
  int id = 0;
  Orientation dir = Orientation::FromLeft;

  friend auto operator<=>(const Visit&, const Visit&) = default;
};

constexpr Visit reversed(Visit v) noexcept { return {v.id, flip(v.dir)}; }

// A customer is a segment between two entry nodes. Entering at the left node
// costs traverse[m][FromLeft] and exits at the right node; entering at the
// right node costs traverse[m][FromRight] and exits at the left node.
//
// `members` records which original customers (and in what direction) the
// segment stands for. Atomic customers carry exactly {id, FromLeft}.
struct SegmentCustomer {
  int id = 0;
  NodeId left;
  NodeId right;
  std::array<std::array<Cost, 2>, 2> traverse{};  // [vehicle][orientation]
  Demand demand = 0;
  std::optional<Vehicle> fixed_to;
  std::vector<Visit> members;

  NodeId entry(Orientation o) const noexcept { return o == Orientation::FromLeft ? left : right; }
  NodeId exit(Orientation o) const noexcept { return o == Orientation::FromLeft ? right : left; }

  Cost traversal(Vehicle m, Orientation o) const noexcept {
    return traverse[index_of(m)][index_of(o)];
  }

  friend bool operator==(const SegmentCustomer&, const SegmentCustomer&) = default;
};

// Builds an atomic customer. Costs are given as l1L, l1R, l2L, l2R.
inline SegmentCustomer make_customer(int id, NodeId left, NodeId right,
                                     std::array<Cost, 4> costs, Demand demand,
                                     std::optional<Vehicle> fixed_to = std::nullopt) {
  SegmentCustomer c;
  c.id = id;
  c.left = left;
  c.right = right;
  c.traverse = {{{costs[0], costs[1]}, {costs[2], costs[3]}}};
  c.demand = demand;
  c.fixed_to = fixed_to;
  c.members = {{id, Orientation::FromLeft}};
  return c;
}

// A customer sitting on a single node, free to traverse.
inline SegmentCustomer make_point_customer(int id, NodeId node, Demand demand,
                                           std::optional<Vehicle> fixed_to = std::nullopt) {
  return make_customer(id, node, node, {0, 0, 0, 0}, demand, fixed_to);
}

struct Fleet {
  std::array<Demand, 2> capacity{};
  NodeId v1_start;  // vehicle 1 leaves from here
  NodeId v1_end;    // vehicle 1 returns here
  NodeId v2_start;
  NodeId v2_end;

  Demand capacity_of(Vehicle m) const noexcept { return capacity[index_of(m)]; }

  friend bool operator==(const Fleet&, const Fleet&) = default;
};

inline Fleet make_single_depot_fleet(NodeId depot, Demand w1, Demand w2) {
  return Fleet{{w1, w2}, depot, depot, depot, depot};
}

class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(int dimension, Cost fill = 0)
      : dim_(dimension), data_(static_cast<std::size_t>(dimension) * dimension, fill) {
    for (int i = 0; i < dim_; ++i) data_[static_cast<std::size_t>(i) * dim_ + i] = 0;
  }

  int dimension() const noexcept { return dim_; }

  Cost operator()(NodeId from, NodeId to) const noexcept {
    return data_[static_cast<std::size_t>(from.index) * dim_ + to.index];
  }
  Cost& at(int from, int to) { return data_[static_cast<std::size_t>(from) * dim_ + to]; }
  Cost at(int from, int to) const { return data_[static_cast<std::size_t>(from) * dim_ + to]; }

  friend bool operator==(const CostMatrix&, const CostMatrix&) = default;

 private:
  int dim_ = 0;
  std::vector<Cost> data_;
};

struct CostModel {
  CostMatrix c1;
  CostMatrix c2;

  const CostMatrix& of(Vehicle m) const noexcept { return m == Vehicle::One ? c1 : c2; }
  int dimension() const noexcept { return c1.dimension(); }

  friend bool operator==(const CostModel&, const CostModel&) = default;
};

// Customer 0 marks the switch from vehicle 1 to vehicle 2: entered at the
// vehicle 1 end depot, left at the vehicle 2 start depot, free in the
// forward direction and forbidden backwards.
inline SegmentCustomer make_switch_customer(const Fleet& fleet) {
  return make_customer(0, fleet.v1_end, fleet.v2_start, {0, kInfinity, 0, kInfinity}, 0);
}

// Instances are immutable once built; the cost matrices are shared between an
// instance and every reduced instance derived from it.
struct Instance {
  std::string name;
  Fleet fleet;
  std::shared_ptr<const CostModel> costs;
  std::vector<SegmentCustomer> customers;  // customers[k].id == k + 1
  SegmentCustomer switch_customer;

  int size() const noexcept { return static_cast<int>(customers.size()); }

  const SegmentCustomer& customer(int id) const {
    return id == 0 ? switch_customer : customers[static_cast<std::size_t>(id - 1)];
  }

  Cost arc(Vehicle m, NodeId from, NodeId to) const noexcept { return costs->of(m)(from, to); }

  Demand total_demand() const noexcept {
    Demand total = 0;
    for (const auto& c : customers) total += c.demand;
    return total;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    auto same_costs = a.costs == b.costs || (a.costs && b.costs && *a.costs == *b.costs);
    return a.name == b.name && a.fleet == b.fleet && same_costs && a.customers == b.customers &&
           a.switch_customer == b.switch_customer;
  }
};

// Throws Error when an instance invariant does not hold.
inline void validate(const Instance& inst) {
  if (!inst.costs) throw Error("instance has no cost model");
  const int dim = inst.costs->dimension();
  if (inst.costs->c2.dimension() != dim) throw Error("cost matrices differ in dimension");
  for (const CostMatrix* c : {&inst.costs->c1, &inst.costs->c2}) {
    for (int i = 0; i < dim; ++i) {
      if (c->at(i, i) != 0) throw Error("cost matrix diagonal must be zero");
      for (int j = 0; j < dim; ++j) {
        if (c->at(i, j) < 0) throw Error("negative arc cost");
      }
    }
  }
  auto check_node = [dim](NodeId n, const char* what) {
    if (n.index < 0 || n.index >= dim) throw Error(std::string(what) + " node out of range");
  };
  check_node(inst.fleet.v1_start, "depot");
  check_node(inst.fleet.v1_end, "depot");
  check_node(inst.fleet.v2_start, "depot");
  check_node(inst.fleet.v2_end, "depot");
  if (inst.fleet.capacity[0] < 0 || inst.fleet.capacity[1] < 0)
    throw Error("negative vehicle capacity");
  if (inst.switch_customer != make_switch_customer(inst.fleet))
    throw Error("switch customer does not match the fleet");
  for (std::size_t k = 0; k < inst.customers.size(); ++k) {
    const auto& c = inst.customers[k];
    if (c.id != static_cast<int>(k) + 1) throw Error("customer ids must be 1..n in order");
    check_node(c.left, "customer");
    check_node(c.right, "customer");
    for (const auto& per_vehicle : c.traverse)
      for (Cost t : per_vehicle)
        if (t < 0) throw Error("negative traversal cost for customer " + std::to_string(c.id));
    if (c.demand < 0) throw Error("negative demand for customer " + std::to_string(c.id));
    if (c.members.empty()) throw Error("customer " + std::to_string(c.id) + " has no members");
  }
  if (inst.total_demand() > inst.fleet.capacity[0] + inst.fleet.capacity[1])
    throw InfeasibleError("total demand exceeds the combined capacity");
}

// Assembles and validates an instance. Customers must already carry ids 1..n
// in order.
inline Instance make_instance(Fleet fleet, std::shared_ptr<const CostModel> costs,
                              std::vector<SegmentCustomer> customers, std::string name = {}) {
  Instance inst;
  inst.name = std::move(name);
  inst.fleet = fleet;
  inst.costs = std::move(costs);
  inst.customers = std::move(customers);
  for (auto& c : inst.customers)
    if (c.members.empty()) c.members = {{c.id, Orientation::FromLeft}};
  inst.switch_customer = make_switch_customer(fleet);
  validate(inst);
  return inst;
}

struct TwoRouteSolution {
  std::vector<Visit> visits;
  Cost cost = kInfinity;
  std::array<Demand, 2> loads{};

  // Index of customer 0 in visits.
  std::size_t switch_position() const {
    for (std::size_t p = 0; p < visits.size(); ++p)
      if (visits[p].id == 0) return p;
    throw StructureError("solution has no switch customer");
  }

  std::span<const Visit> route(Vehicle m) const {
    std::size_t sw = switch_position();
    std::span<const Visit> all(visits);
    return m == Vehicle::One ? all.first(sw) : all.subspan(sw + 1);
  }

  friend bool operator==(const TwoRouteSolution&, const TwoRouteSolution&) = default;
};

struct Evaluation {
  Cost cost = 0;
  std::array<Demand, 2> loads{};
};

namespace detail {

inline void check_structure(const Instance& inst, std::span<const Visit> visits) {
  const std::size_t n = inst.customers.size();
  if (visits.size() != n + 1)
    throw StructureError("expected " + std::to_string(n + 1) + " visits, got " +
                         std::to_string(visits.size()));
  thread_local std::vector<unsigned char> seen;
  seen.assign(n + 1, 0);
  for (const Visit& v : visits) {
    if (v.id < 0 || static_cast<std::size_t>(v.id) > n)
      throw StructureError("unknown customer id " + std::to_string(v.id));
    if (seen[static_cast<std::size_t>(v.id)]++)
      throw StructureError("customer " + std::to_string(v.id) + " visited twice");
  }
  if (visits.front().id == 0) throw StructureError("switch customer 0 visited first");
}

}  // namespace detail

// Cost and loads of a concatenated two-vehicle route. Arcs leaving a customer
// are charged with the matrix of the vehicle serving it; the switch customer
// is left by vehicle 2. Returns kInfinity rather than overflowing.
inline Evaluation evaluate_solution(const Instance& inst, std::span<const Visit> visits) {
  detail::check_structure(inst, visits);
  Evaluation ev;
  Vehicle m = Vehicle::One;
  NodeId at = inst.fleet.v1_start;
  for (const Visit& v : visits) {
    const SegmentCustomer& c = inst.customer(v.id);
    ev.cost = sat_add(ev.cost, inst.arc(m, at, c.entry(v.dir)), c.traversal(m, v.dir));
    at = c.exit(v.dir);
    if (v.id == 0) {
      m = Vehicle::Two;
    } else {
      ev.loads[index_of(m)] += c.demand;
    }
  }
  ev.cost = sat_add(ev.cost, inst.arc(Vehicle::Two, at, inst.fleet.v2_end));
  return ev;
}

inline TwoRouteSolution make_solution(const Instance& inst, std::vector<Visit> visits) {
  TwoRouteSolution sol;
  sol.visits = std::move(visits);
  Evaluation ev = evaluate_solution(inst, sol.visits);
  sol.cost = ev.cost;
  sol.loads = ev.loads;
  return sol;
}

struct FeasibilityReport {
  std::array<Demand, 2> loads{};
  bool capacity_ok[2] = {true, true};
  std::vector<int> misplaced_fixed;  // customers on the wrong side of 0

  bool feasible() const noexcept {
    return capacity_ok[0] && capacity_ok[1] && misplaced_fixed.empty();
  }
  explicit operator bool() const noexcept { return feasible(); }
};

// Capacity and fixed-item check. Never throws for structurally valid input.
inline FeasibilityReport check_feasibility(const Instance& inst, std::span<const Visit> visits) {
  FeasibilityReport r;
  Vehicle m = Vehicle::One;
  for (const Visit& v : visits) {
    if (v.id == 0) {
      m = Vehicle::Two;
      continue;
    }
    const SegmentCustomer& c = inst.customer(v.id);
    r.loads[index_of(m)] += c.demand;
    if (c.fixed_to && *c.fixed_to != m) r.misplaced_fixed.push_back(v.id);
  }
  for (int k = 0; k < 2; ++k) r.capacity_ok[k] = r.loads[k] <= inst.fleet.capacity[k];
  return r;
}

inline FeasibilityReport check_feasibility(const Instance& inst, const TwoRouteSolution& sol) {
  return check_feasibility(inst, sol.visits);
}

}  // namespace vrp2
