#pragma once

// Sub-path aggregation and the sliding-subsets disassembly.
//
// A solution with the switch removed is a sequence tau of N customers, the
// first k1 served by vehicle 1. Two windows of s consecutive positions, S1
// and S2, are freed as individual customers; every other maximal run of tau
// that does not cross the switch becomes one aggregated customer. Runs are
// split at their last node until there are five of them (or every run is a
// single customer), so the reduced instance has 2s + 6 items counting the
// switch whenever N >= 2s + 5.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vrp2/model.hpp"

namespace vrp2 {

namespace detail {

inline void append_oriented_members(const SegmentCustomer& c, Orientation dir,
                                    std::vector<Visit>& out) {
  if (dir == Orientation::FromLeft) {
    out.insert(out.end(), c.members.begin(), c.members.end());
  } else {
    for (auto it = c.members.rbegin(); it != c.members.rend(); ++it) out.push_back(reversed(*it));
  }
}

// Traversal plus internal arcs of a path driven by vehicle m.
inline Cost path_length(const Instance& inst, std::span<const Visit> path, Vehicle m,
                        bool backwards) {
  Cost total = 0;
  std::optional<NodeId> at;
  auto step = [&](Visit v) {
    const SegmentCustomer& c = inst.customer(v.id);
    if (at) total = sat_add(total, inst.arc(m, *at, c.entry(v.dir)));
    total = sat_add(total, c.traversal(m, v.dir));
    at = c.exit(v.dir);
  };
  if (backwards) {
    for (auto it = path.rbegin(); it != path.rend(); ++it) step(reversed(*it));
  } else {
    for (Visit v : path) step(v);
  }
  return total;
}

}  // namespace detail

// Replaces a sub-path by one segment customer: it is entered where the path
// starts, left where it ends, and costs the path's length in each direction.
// Its members are the path's visits, in the ids of `inst`.
inline SegmentCustomer aggregate_subpath(const Instance& inst, std::span<const Visit> path, int id = 0) {
  if (path.empty()) throw AggregationError("cannot aggregate an empty path");
  SegmentCustomer agg;
  agg.id = id;
  const SegmentCustomer& first = inst.customer(path.front().id);
  const SegmentCustomer& last = inst.customer(path.back().id);
  agg.left = first.entry(path.front().dir);
  agg.right = last.exit(path.back().dir);
  for (Vehicle m : {Vehicle::One, Vehicle::Two}) {
    agg.traverse[index_of(m)][0] = detail::path_length(inst, path, m, false);
    agg.traverse[index_of(m)][1] = detail::path_length(inst, path, m, true);
  }
  for (Visit v : path) {
    if (v.id == 0) throw AggregationError("the switch customer cannot be aggregated");
    const SegmentCustomer& c = inst.customer(v.id);
    agg.demand += c.demand;
    if (c.fixed_to) {
      if (agg.fixed_to && *agg.fixed_to != *c.fixed_to)
        throw AggregationError("sub-path mixes customers fixed to different vehicles");
      agg.fixed_to = c.fixed_to;
    }
  }
  agg.members.assign(path.begin(), path.end());
  return agg;
}

struct Disassembly {
  // Reduced instance; each customer's `members` lists the original visits it
  // stands for. It shares the cost matrices of the original instance.
  Instance small_instance;
  // The reduced route that reproduces `origin` visit for visit.
  TwoRouteSolution identity;
  TwoRouteSolution origin;
  // Original instance; must outlive the disassembly.
  const Instance* full = nullptr;
  int s = 0;
  int pos1 = 0;
  int pos2 = 0;

  int size() const noexcept { return small_instance.size() + 1; }

  const std::vector<Visit>& members_of(int small_id) const {
    return small_instance.customer(small_id).members;
  }
};

// Checks that windows at 1-based positions pos1 and pos2 are legal for a route
// with k1 vehicle 1 customers and k2 vehicle 2 customers.
inline bool legal_windows(int k1, int k2, int s, int pos1, int pos2) noexcept {
  const int total = k1 + k2;
  return s >= 1 && pos1 >= 1 && pos1 <= k1 && pos2 >= pos1 + s && pos2 + s - 1 <= total &&
         pos2 + s - 1 >= k1 + 1;
}

inline Disassembly disassemble(const TwoRouteSolution& sol, const Instance& inst, int s, int pos1,
                               int pos2) {
  const int sw = static_cast<int>(sol.switch_position());
  std::vector<Visit> tau;
  tau.reserve(sol.visits.size());
  for (const Visit& v : sol.visits)
    if (v.id != 0) tau.push_back(v);
  const int total = static_cast<int>(tau.size());
  const int k1 = sw;
  if (!legal_windows(k1, total - k1, s, pos1, pos2))
    throw DisassemblyError("illegal windows s=" + std::to_string(s) + " at " + std::to_string(pos1) +
                           "," + std::to_string(pos2) + " for routes of " + std::to_string(k1) +
                           " and " + std::to_string(total - k1) + " customers");

  struct Piece {
    int first;
    int last;  // inclusive, 0-based into tau
    bool free;
  };
  auto in_window = [&](int p) {
    return (p >= pos1 - 1 && p < pos1 - 1 + s) || (p >= pos2 - 1 && p < pos2 - 1 + s);
  };
  std::vector<Piece> pieces;
  for (int p = 0; p < total;) {
    if (in_window(p)) {
      pieces.push_back({p, p, true});
      ++p;
      continue;
    }
    int q = p;
    while (q + 1 < total && !in_window(q + 1) && q + 1 != k1) ++q;
    pieces.push_back({p, q, false});
    p = q + 1;
  }

  auto count_runs = [&] {
    int runs = 0;
    for (const Piece& pc : pieces) runs += !pc.free;
    return runs;
  };
  for (int runs = count_runs(); runs < 5; ++runs) {
    std::size_t longest = pieces.size();
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      const Piece& pc = pieces[k];
      if (pc.free || pc.last == pc.first) continue;
      if (longest == pieces.size() ||
          pc.last - pc.first > pieces[longest].last - pieces[longest].first)
        longest = k;
    }
    if (longest == pieces.size()) break;
    Piece tail{pieces[longest].last, pieces[longest].last, false};
    pieces[longest].last -= 1;
    pieces.insert(pieces.begin() + static_cast<std::ptrdiff_t>(longest) + 1, tail);
  }

  Disassembly d;
  d.full = &inst;
  d.s = s;
  d.pos1 = pos1;
  d.pos2 = pos2;
  d.origin = sol;
  d.small_instance.name = inst.name;
  d.small_instance.fleet = inst.fleet;
  d.small_instance.costs = inst.costs;
  d.small_instance.switch_customer = inst.switch_customer;
  d.small_instance.customers.reserve(pieces.size());

  std::vector<Visit> identity;
  identity.reserve(pieces.size() + 1);
  bool switch_placed = false;
  for (const Piece& pc : pieces) {
    if (!switch_placed && pc.first >= k1) {
      identity.push_back({0, Orientation::FromLeft});
      switch_placed = true;
    }
    const int id = static_cast<int>(d.small_instance.customers.size()) + 1;
    std::span<const Visit> path(tau.data() + pc.first, static_cast<std::size_t>(pc.last - pc.first + 1));
    d.small_instance.customers.push_back(aggregate_subpath(inst, path, id));
    identity.push_back({id, Orientation::FromLeft});
  }
  if (!switch_placed) identity.push_back({0, Orientation::FromLeft});
  d.identity = make_solution(d.small_instance, std::move(identity));
  return d;
}

// Expands a reduced route back to the original customers. Reduced customers
// visited FromRight contribute their members reversed and flipped.
inline TwoRouteSolution lift_solution(const Disassembly& d, const TwoRouteSolution& small_sol) {
  if (d.full == nullptr) throw InternalError("disassembly has no source instance");
  std::vector<Visit> visits;
  visits.reserve(static_cast<std::size_t>(d.full->size()) + 1);
  for (const Visit& v : small_sol.visits) {
    if (v.id == 0) {
      visits.push_back(v);
      continue;
    }
    detail::append_oriented_members(d.small_instance.customer(v.id), v.dir, visits);
  }
  return make_solution(*d.full, std::move(visits));
}

}  // namespace vrp2
