#pragma once

// Intra-route local search: first-improvement 2-opt (segment reversal, which
// also covers flipping a single customer) and Or-opt (moving 1-3 consecutive
// customers, optionally reversed), iterated to a local optimum.
//
// Reversals are priced exactly on asymmetric data: a reversed segment uses
// the opposite traversal cost of every member and the opposite arcs.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "vrp2/model.hpp"

namespace vrp2 {

namespace detail {

// Path cost that keeps forbidden terms countable, so differences stay exact.
struct Price {
  Cost finite = 0;
  std::int64_t forbidden = 0;

  static Price of(Cost c) noexcept { return is_infinite(c) ? Price{0, 1} : Price{c, 0}; }

  Price& operator+=(Price o) noexcept {
    finite += o.finite;
    forbidden += o.forbidden;
    return *this;
  }
  Price& operator-=(Price o) noexcept {
    finite -= o.finite;
    forbidden -= o.forbidden;
    return *this;
  }
  friend Price operator+(Price a, Price b) noexcept { return a += b; }
  friend Price operator-(Price a, Price b) noexcept { return a -= b; }

  // A change is an improvement when it removes forbidden terms, or keeps
  // their number and lowers the finite part.
  bool improves() const noexcept { return forbidden < 0 || (forbidden == 0 && finite < 0); }
};

class RouteSearch {
 public:
  RouteSearch(const Instance& inst, Vehicle m, NodeId start, NodeId end, std::vector<Visit> route)
      : inst_(inst), m_(m), start_(start), end_(end), route_(std::move(route)) {}

  std::vector<Visit> run() {
    while (two_opt() || or_opt()) {
    }
    return route_;
  }

 private:
  Price arc(NodeId a, NodeId b) const { return Price::of(inst_.arc(m_, a, b)); }
  NodeId entry(Visit v) const { return inst_.customer(v.id).entry(v.dir); }
  NodeId exit(Visit v) const { return inst_.customer(v.id).exit(v.dir); }
  Price trav(Visit v) const { return Price::of(inst_.customer(v.id).traversal(m_, v.dir)); }

  int size() const { return static_cast<int>(route_.size()); }
  NodeId exit_before(int p) const { return p == 0 ? start_ : exit(route_[p - 1]); }
  NodeId entry_after(int p) const { return p + 1 == size() ? end_ : entry(route_[p + 1]); }

  // fwd_[t] / rev_[t]: internal cost of route_[0..t) driven forwards, and of
  // the same customers each flipped and linked in the opposite direction.
  void rebuild() {
    const int k = size();
    fwd_.assign(static_cast<std::size_t>(k) + 1, Price{});
    rev_.assign(static_cast<std::size_t>(k) + 1, Price{});
    for (int t = 0; t < k; ++t) {
      Price f = trav(route_[t]);
      Price r = trav(reversed(route_[t]));
      if (t > 0) {
        f += arc(exit(route_[t - 1]), entry(route_[t]));
        r += arc(entry(route_[t]), exit(route_[t - 1]));
      }
      fwd_[t + 1] = fwd_[t] + f;
      rev_[t + 1] = rev_[t] + r;
    }
  }

  // Internal cost of route_[a..b], both ends inclusive.
  Price forward_inside(int a, int b) const {
    Price p = fwd_[b + 1] - fwd_[a + 1];
    return p + trav(route_[a]);
  }
  Price reversed_inside(int a, int b) const {
    Price p = rev_[b + 1] - rev_[a + 1];
    return p + trav(reversed(route_[a]));
  }

  bool two_opt() {
    rebuild();
    const int k = size();
    for (int a = 0; a < k; ++a) {
      const NodeId before = exit_before(a);
      for (int b = a; b < k; ++b) {
        const NodeId after = entry_after(b);
        Price delta = arc(before, exit(route_[b])) + reversed_inside(a, b) + arc(entry(route_[a]), after);
        delta -= arc(before, entry(route_[a])) + forward_inside(a, b) + arc(exit(route_[b]), after);
        if (delta.improves()) {
          std::reverse(route_.begin() + a, route_.begin() + b + 1);
          for (int t = a; t <= b; ++t) route_[t] = reversed(route_[t]);
          return true;
        }
      }
    }
    return false;
  }

  bool or_opt() {
    rebuild();
    const int k = size();
    for (int len = 1; len <= 3; ++len) {
      for (int a = 0; a + len <= k; ++a) {
        const int b = a + len - 1;
        const NodeId before = exit_before(a);
        const NodeId after = entry_after(b);
        const Price removed = arc(before, entry(route_[a])) + arc(exit(route_[b]), after);
        const Price bridged = arc(before, after);
        const Price turn = reversed_inside(a, b) - forward_inside(a, b);
        // Insert between route_[q] and route_[q + 1]; q == -1 is the start.
        for (int q = -1; q < k; ++q) {
          if (q >= a - 1 && q <= b) continue;
          const NodeId x = q < 0 ? start_ : exit(route_[q]);
          const NodeId y = q + 1 >= k ? end_ : entry(route_[q + 1]);
          const Price gap = arc(x, y);
          for (bool rev : {false, true}) {
            const NodeId in = rev ? exit(route_[b]) : entry(route_[a]);
            const NodeId out = rev ? entry(route_[a]) : exit(route_[b]);
            Price delta = bridged + arc(x, in) + arc(out, y);
            if (rev) delta += turn;
            delta -= removed + gap;
            if (delta.improves()) {
              move_segment(a, b, q, rev);
              return true;
            }
          }
        }
      }
    }
    return false;
  }

  void move_segment(int a, int b, int q, bool rev) {
    std::vector<Visit> seg(route_.begin() + a, route_.begin() + b + 1);
    if (rev) {
      std::reverse(seg.begin(), seg.end());
      for (Visit& v : seg) v = reversed(v);
    }
    std::vector<Visit> out;
    out.reserve(route_.size());
    if (q < 0) out.insert(out.end(), seg.begin(), seg.end());
    for (int t = 0; t < size(); ++t) {
      if (t >= a && t <= b) continue;
      out.push_back(route_[t]);
      if (t == q) out.insert(out.end(), seg.begin(), seg.end());
    }
    route_ = std::move(out);
  }

  const Instance& inst_;
  Vehicle m_;
  NodeId start_;
  NodeId end_;
  std::vector<Visit> route_;
  std::vector<Price> fwd_;
  std::vector<Price> rev_;
};

}  // namespace detail

// Local search on the route of vehicle m; the other route is left alone and
// no customer crosses the switch.
inline TwoRouteSolution improve_route(const Instance& inst, const TwoRouteSolution& sol, Vehicle m) {
  const std::size_t sw = sol.switch_position();
  std::span<const Visit> all(sol.visits);
  std::span<const Visit> part = m == Vehicle::One ? all.first(sw) : all.subspan(sw + 1);
  if (part.size() < 1) return sol;

  const SegmentCustomer& zero = inst.switch_customer;
  const NodeId start = m == Vehicle::One ? inst.fleet.v1_start : zero.exit(Orientation::FromLeft);
  const NodeId end = m == Vehicle::One ? zero.entry(Orientation::FromLeft) : inst.fleet.v2_end;
  detail::RouteSearch search(inst, m, start, end, std::vector<Visit>(part.begin(), part.end()));
  std::vector<Visit> better = search.run();

  std::vector<Visit> visits;
  visits.reserve(sol.visits.size());
  if (m == Vehicle::One) {
    visits.insert(visits.end(), better.begin(), better.end());
    visits.insert(visits.end(), all.begin() + static_cast<std::ptrdiff_t>(sw), all.end());
  } else {
    visits.insert(visits.end(), all.begin(), all.begin() + static_cast<std::ptrdiff_t>(sw) + 1);
    visits.insert(visits.end(), better.begin(), better.end());
  }
  return make_solution(inst, std::move(visits));
}

inline TwoRouteSolution improve_routes(const Instance& inst, const TwoRouteSolution& sol) {
  return improve_route(inst, improve_route(inst, sol, Vehicle::One), Vehicle::Two);
}

}  // namespace vrp2
