#pragma once

// Exact solver: Held-Karp subset recursion extended to two vehicles.
//
// Items are the switch customer 0 and customers 1..n; a subset J of items is a
// bitmask with bit k standing for item k. value(o, i, J) is the cheapest way
// to enter item i from side o, traverse it, serve every item of J in some
// order and finish at the vehicle 2 end depot. Item i is served by vehicle 1
// while 0 is still in J, and by vehicle 2 afterwards.
//
// Complexity: O(n^2 2^n) time, O(n 2^n) space.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vrp2/model.hpp"

namespace vrp2 {

inline constexpr int kMaxDpItems = 24;

struct DpOptions {
  // Largest accepted number of items, switch customer included.
  int cap = 20;
  // Allow customer 0 in last position, i.e. an empty vehicle 2 route.
  bool allow_empty_vehicle2 = false;
};

using SubsetMask = std::uint32_t;

struct DpTables {
  static constexpr std::uint8_t kNoParent = 0xFF;

  int items = 0;
  std::vector<Cost> value;
  std::vector<std::uint8_t> parent;  // 2 * next item + next orientation
  std::vector<Demand> subset_demand;  // w(J) for every mask J

  SubsetMask full_mask() const noexcept { return (SubsetMask{1} << items) - 1; }

  std::size_t index(Orientation o, int i, SubsetMask J) const noexcept {
    return (static_cast<std::size_t>(J) * items + i) * 2 + index_of(o);
  }

  Cost at(Orientation o, int i, SubsetMask J) const noexcept { return value[index(o, i, J)]; }

  std::optional<Visit> next(Orientation o, int i, SubsetMask J) const noexcept {
    std::uint8_t p = parent[index(o, i, J)];
    if (p == kNoParent) return std::nullopt;
    return Visit{p >> 1, static_cast<Orientation>(p & 1)};
  }
};

// Cost of traversing `from` with vehicle m and driving on to the entry of `to`.
inline Cost transition_cost(const Instance& inst, Visit from, Visit to, Vehicle m) {
  const SegmentCustomer& a = inst.customer(from.id);
  const SegmentCustomer& b = inst.customer(to.id);
  return sat_add(a.traversal(m, from.dir), inst.arc(m, a.exit(from.dir), b.entry(to.dir)));
}

// Follows parent pointers from the chosen first visit and re-evaluates the
// resulting route.
inline TwoRouteSolution reconstruct(const DpTables& tables, const Instance& inst, Visit start) {
  std::vector<Visit> visits;
  visits.reserve(static_cast<std::size_t>(tables.items));
  SubsetMask J = tables.full_mask() & ~(SubsetMask{1} << start.id);
  Visit at = start;
  visits.push_back(at);
  while (J != 0) {
    auto nxt = tables.next(at.dir, at.id, J);
    if (!nxt || !(J & (SubsetMask{1} << nxt->id)))
      throw InternalError("corrupt parent chain in dynamic programming tables");
    J &= ~(SubsetMask{1} << nxt->id);
    at = *nxt;
    visits.push_back(at);
  }
  return make_solution(inst, std::move(visits));
}

namespace detail {

// Lowest vehicle 1 mask (over customers 1..n, bit k-1 for customer k) that
// gives a capacity and fixed-item feasible split, if any.
inline std::optional<std::uint64_t> feasible_split(const Instance& inst, bool allow_empty_vehicle2) {
  const int n = inst.size();
  if (n == 0) return std::nullopt;
  const Demand total = inst.total_demand();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    if (!allow_empty_vehicle2 && mask == (std::uint64_t{1} << n) - 1) continue;
    Demand w1 = 0;
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      const auto& c = inst.customers[static_cast<std::size_t>(k)];
      bool in1 = (mask >> k) & 1;
      if (in1) w1 += c.demand;
      if (c.fixed_to && (*c.fixed_to == Vehicle::One) != in1) ok = false;
    }
    if (ok && w1 <= inst.fleet.capacity[0] && total - w1 <= inst.fleet.capacity[1]) return mask;
  }
  return std::nullopt;
}

}  // namespace detail

class ExactSolver {
 public:
  explicit ExactSolver(DpOptions options = {}) : options_(options) {}

  const DpOptions& options() const noexcept { return options_; }
  const DpTables& tables() const noexcept { return tables_; }

  // Minimum cost route. Throws SizeError when the instance exceeds the cap
  // and InfeasibleError when no split respects capacities and fixed items.
  // When a feasible split exists but every route uses a forbidden arc, the
  // returned solution has cost kInfinity.
  TwoRouteSolution solve(const Instance& inst) { return *run(inst, kInfinity); }

  // The optimum if it costs strictly less than `bound`, otherwise nothing.
  // States that provably cannot beat the bound are dropped from the tables,
  // so tables() is only complete after solve().
  std::optional<TwoRouteSolution> solve_below(const Instance& inst, Cost bound) {
    return run(inst, saturate(bound));
  }

 private:
  std::optional<TwoRouteSolution> run(const Instance& inst, Cost bound) {
    const int items = inst.size() + 1;
    const int cap = std::min(options_.cap, kMaxDpItems);
    if (items > cap)
      throw SizeError("exact solver accepts at most " + std::to_string(cap) +
                      " customers including 0, got " + std::to_string(items));
    if (inst.size() == 0) throw InfeasibleError("instance has no customers");
    fill(inst, bound);

    const SubsetMask full = tables_.full_mask();
    Cost best = kInfinity;
    Visit best_start{};
    for (int i = 1; i < items; ++i) {
      const SegmentCustomer& c = inst.customer(i);
      for (Orientation o : {Orientation::FromLeft, Orientation::FromRight}) {
        Cost v = sat_add(inst.arc(Vehicle::One, inst.fleet.v1_start, c.entry(o)),
                         tables_.at(o, i, full & ~(SubsetMask{1} << i)));
        if (v < best) {
          best = v;
          best_start = {i, o};
        }
      }
    }

    if (!is_infinite(bound) && best >= bound) return std::nullopt;
    if (is_infinite(best)) {
      auto split = detail::feasible_split(inst, options_.allow_empty_vehicle2);
      if (!split) throw InfeasibleError("no split of customers respects capacities and fixed items");
      std::vector<Visit> visits;
      for (int k = 0; k < inst.size(); ++k)
        if ((*split >> k) & 1) visits.push_back({k + 1, Orientation::FromLeft});
      visits.push_back({0, Orientation::FromLeft});
      for (int k = 0; k < inst.size(); ++k)
        if (!((*split >> k) & 1)) visits.push_back({k + 1, Orientation::FromLeft});
      return make_solution(inst, std::move(visits));
    }

    TwoRouteSolution sol = reconstruct(tables_, inst, best_start);
    if (sol.cost != best)
      throw InternalError("reconstructed route costs " + cost_to_string(sol.cost) +
                          ", tables say " + cost_to_string(best));
    return sol;
  }

  void fill(const Instance& inst, Cost bound) {
    const int n = inst.size() + 1;
    const std::size_t masks = std::size_t{1} << n;
    const std::size_t states = masks * static_cast<std::size_t>(n) * 2;
    tables_.items = n;
    tables_.value.resize(states);
    tables_.parent.resize(states);
    tables_.subset_demand.resize(masks);

    std::vector<Demand> w(static_cast<std::size_t>(n));
    std::vector<int> fixed(static_cast<std::size_t>(n), 0);
    SubsetMask fixed1 = 0;
    for (int i = 0; i < n; ++i) {
      const SegmentCustomer& c = inst.customer(i);
      w[static_cast<std::size_t>(i)] = c.demand;
      if (c.fixed_to) {
        fixed[static_cast<std::size_t>(i)] = static_cast<int>(*c.fixed_to);
        if (*c.fixed_to == Vehicle::One) fixed1 |= SubsetMask{1} << i;
      }
    }
    // Items whose two orientations are interchangeable: one node, equal
    // traversal costs. Their FromRight entries copy FromLeft, and as a
    // successor only FromLeft is tried, which matches the tie-break.
    SubsetMask symmetric = 0;
    for (int i = 1; i < n; ++i) {
      const SegmentCustomer& c = inst.customer(i);
      if (c.left == c.right && c.traverse[0][0] == c.traverse[0][1] && c.traverse[1][0] == c.traverse[1][1])
        symmetric |= SubsetMask{1} << i;
    }
    const Demand total = inst.total_demand();
    const Demand W1 = inst.fleet.capacity[0];
    const Demand W2 = inst.fleet.capacity[1];

    // arc[((m * n + i) * 2 + oi) * 2n + 2j + oj] = transition cost i -> j.
    const std::size_t row = static_cast<std::size_t>(n) * 2;
    std::vector<Cost> arc(2 * row * row);
    for (Vehicle m : {Vehicle::One, Vehicle::Two})
      for (int i = 0; i < n; ++i)
        for (Orientation oi : {Orientation::FromLeft, Orientation::FromRight})
          for (int j = 0; j < n; ++j)
            for (Orientation oj : {Orientation::FromLeft, Orientation::FromRight})
              arc[((static_cast<std::size_t>(index_of(m)) * n + i) * 2 + index_of(oi)) * row +
                  static_cast<std::size_t>(j) * 2 + index_of(oj)] =
                  transition_cost(inst, {i, oi}, {j, oj}, m);
    auto arc_row = [&](Vehicle m, int i, int oi) {
      return arc.data() + ((static_cast<std::size_t>(index_of(m)) * n + i) * 2 + oi) * row;
    };

    std::vector<Cost> finish(row);
    for (int i = 0; i < n; ++i) {
      const SegmentCustomer& c = inst.customer(i);
      for (Orientation o : {Orientation::FromLeft, Orientation::FromRight})
        finish[static_cast<std::size_t>(i) * 2 + index_of(o)] =
            sat_add(c.traversal(Vehicle::Two, o), inst.arc(Vehicle::Two, c.exit(o), inst.fleet.v2_end));
    }

    // Cheapest way to leave each item, next item or end depot included. Every
    // item outside J except i is left exactly once before i is entered, so
    // their sum bounds the unseen prefix from below.
    const bool pruning = !is_infinite(bound);
    std::vector<Cost> leave(static_cast<std::size_t>(n), 0);
    Cost leave_total = 0;
    if (pruning) {
      for (int i = 0; i < n; ++i) {
        Cost lo = i == 0 ? finish[0] : std::min(finish[static_cast<std::size_t>(i) * 2],
                                                 finish[static_cast<std::size_t>(i) * 2 + 1]);
        const int f = fixed[static_cast<std::size_t>(i)];
        for (Vehicle m : {Vehicle::One, Vehicle::Two}) {
          if (f != 0 && f != static_cast<int>(m)) continue;
          if (i == 0 && m == Vehicle::One) continue;
          for (int oi = 0; oi < 2; ++oi) {
            if (i == 0 && oi == 1) continue;
            const Cost* r = arc_row(m, i, oi);
            for (std::size_t c = 0; c < row; ++c)
              if (static_cast<int>(c / 2) != i) lo = std::min(lo, r[c]);
          }
        }
        leave[static_cast<std::size_t>(i)] = std::min(lo, bound);
        leave_total += leave[static_cast<std::size_t>(i)];
      }
    }

    Cost* val = tables_.value.data();
    std::uint8_t* par = tables_.parent.data();
    Demand* sd = tables_.subset_demand.data();
    sd[0] = 0;

    for (SubsetMask J = 0; J < masks; ++J) {
      if (J != 0) sd[J] = sd[J & (J - 1)] + w[static_cast<std::size_t>(std::countr_zero(J))];
      const Demand wJ = sd[J];
      const bool vehicle1 = J & 1;
      Cost outside = 0;
      if (pruning) {
        outside = leave_total;
        for (SubsetMask rest = J; rest != 0; rest &= rest - 1)
          outside -= leave[static_cast<std::size_t>(std::countr_zero(rest))];
      }
      for (int i = 0; i < n; ++i) {
        if (J & (SubsetMask{1} << i)) continue;
        const std::size_t at = (static_cast<std::size_t>(J) * n + i) * 2;
        Cost best0 = kInfinity, best1 = kInfinity;
        std::uint8_t arg0 = DpTables::kNoParent, arg1 = DpTables::kNoParent;

        bool gated;
        Vehicle m;
        if (i == 0) {
          m = Vehicle::Two;
          gated = total - wJ > W1 || wJ > W2 || (J & fixed1);
        } else if (vehicle1) {
          m = Vehicle::One;
          // Everything outside J is served by vehicle 1, so a prefix above
          // W1 fails the switch test on every completion.
          gated = fixed[static_cast<std::size_t>(i)] == 2 || total - wJ > W1;
        } else {
          m = Vehicle::Two;
          gated = fixed[static_cast<std::size_t>(i)] == 1 || (J & fixed1) ||
                  wJ + w[static_cast<std::size_t>(i)] > W2;
        }

        if (!gated) {
          if (J == 0) {
            if (i != 0) {
              best0 = finish[static_cast<std::size_t>(i) * 2];
              best1 = finish[static_cast<std::size_t>(i) * 2 + 1];
            } else if (options_.allow_empty_vehicle2) {
              best0 = finish[0];
            }
          } else {
            const Cost* r0 = arc_row(m, i, 0);
            const Cost* r1 = arc_row(m, i, 1);
            const bool both = !((symmetric >> i) & 1) && i != 0;
            for (SubsetMask rest = J; rest != 0; rest &= rest - 1) {
              const int j = std::countr_zero(rest);
              const Cost* prev = val + (static_cast<std::size_t>(J ^ (SubsetMask{1} << j)) * n + j) * 2;
              const std::size_t c = static_cast<std::size_t>(j) * 2;
              const int sides = ((symmetric >> j) & 1) ? 1 : 2;
              for (int oj = 0; oj < sides; ++oj) {
                if (is_infinite(prev[oj])) continue;
                const Cost v0 = r0[c + oj] + prev[oj];
                if (v0 < best0) {
                  best0 = v0;
                  arg0 = static_cast<std::uint8_t>(c + oj);
                }
                if (!both) continue;
                const Cost v1 = r1[c + oj] + prev[oj];
                if (v1 < best1) {
                  best1 = v1;
                  arg1 = static_cast<std::uint8_t>(c + oj);
                }
              }
            }
            if (!both && i != 0) {
              best1 = best0;
              arg1 = arg0;
            }
          }
          if (i == 0) {
            best1 = kInfinity;  // the switch is never crossed backwards
            arg1 = DpTables::kNoParent;
          }
          if (pruning) {
            const Cost before = outside - leave[static_cast<std::size_t>(i)];
            if (!is_infinite(best0) && best0 + before >= bound) best0 = kInfinity;
            if (!is_infinite(best1) && best1 + before >= bound) best1 = kInfinity;
          }
        }
        val[at] = saturate(best0);
        val[at + 1] = saturate(best1);
        par[at] = is_infinite(best0) ? DpTables::kNoParent : arg0;
        par[at + 1] = is_infinite(best1) ? DpTables::kNoParent : arg1;
      }
    }
  }

  DpOptions options_;
  DpTables tables_;
};

inline TwoRouteSolution solve_exact(const Instance& inst, DpOptions options = {}) {
  ExactSolver solver(options);
  return solver.solve(inst);
}

}  // namespace vrp2
