#pragma once

// Multistart driver: random allocation, cheapest insertion of fixed
// customers, route improvement, then alternating H(s,l) and route
// improvement while the cost keeps dropping. The best restart wins; ties go
// to the lower restart index.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "vrp2/aggregation.hpp"
#include "vrp2/model.hpp"
#include "vrp2/sliding_search.hpp"
#include "vrp2/tour_improvement.hpp"

namespace vrp2 {

struct SolverParams {
  DisassemblyConfig heuristic{3, 1};
  int restarts = 48;
  std::uint64_t seed = 1;
  int dp_cap = 20;
  // Restarts not yet begun when the limit is reached are skipped.
  std::optional<double> time_limit;
  int parallel_restarts = 1;
  // Without the sliding search a restart is allocation plus route
  // improvement only.
  bool sliding = true;
  bool restart_on_improve = true;
  bool allow_empty_vehicle2 = false;
};

struct RestartTrace {
  int restart = 0;
  Cost initial_cost = 0;  // after the first route improvement
  Cost final_cost = 0;
  int rounds = 0;
  long dp_solves = 0;
  int improvements = 0;
  int effective_s = 0;
  double seconds = 0;
  bool skipped = false;
};

struct MultistartResult {
  TwoRouteSolution best;
  int best_restart = -1;
  std::vector<RestartTrace> restarts;
  double seconds = 0;
};

// Per-restart generator; depends only on (seed, restart), so sequential and
// parallel runs draw identical streams.
inline std::mt19937_64 restart_rng(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart), 0x2b7e1516u};
  return std::mt19937_64(seq);
}

namespace detail {

inline Cost route_cost(const Instance& inst, const std::vector<Visit>& route, Vehicle m) {
  const SegmentCustomer& zero = inst.switch_customer;
  NodeId at = m == Vehicle::One ? inst.fleet.v1_start : zero.exit(Orientation::FromLeft);
  const NodeId end = m == Vehicle::One ? zero.entry(Orientation::FromLeft) : inst.fleet.v2_end;
  Cost total = 0;
  for (const Visit& v : route) {
    const SegmentCustomer& c = inst.customer(v.id);
    total = sat_add(total, inst.arc(m, at, c.entry(v.dir)), c.traversal(m, v.dir));
    at = c.exit(v.dir);
  }
  return sat_add(total, inst.arc(m, at, end));
}

inline void cheapest_insertion(const Instance& inst, std::vector<Visit>& route, int id, Vehicle m) {
  Cost best = kInfinity;
  std::size_t best_pos = route.size();
  Orientation best_dir = Orientation::FromLeft;
  bool found = false;
  for (std::size_t pos = 0; pos <= route.size(); ++pos) {
    for (Orientation o : {Orientation::FromLeft, Orientation::FromRight}) {
      route.insert(route.begin() + static_cast<std::ptrdiff_t>(pos), Visit{id, o});
      Cost c = route_cost(inst, route, m);
      route.erase(route.begin() + static_cast<std::ptrdiff_t>(pos));
      if (!found || c < best) {
        found = true;
        best = c;
        best_pos = pos;
        best_dir = o;
      }
    }
  }
  route.insert(route.begin() + static_cast<std::ptrdiff_t>(best_pos), Visit{id, best_dir});
}

}  // namespace detail

// Random split of the free customers respecting capacities, in random order
// and orientation, with fixed customers added by cheapest insertion.
inline TwoRouteSolution random_allocation(const Instance& inst, std::mt19937_64& rng,
                                          bool allow_empty_vehicle2 = false) {
  std::vector<int> free_ids;
  std::vector<int> fixed[2];
  Demand residual[2] = {inst.fleet.capacity[0], inst.fleet.capacity[1]};
  for (const auto& c : inst.customers) {
    if (c.fixed_to) {
      fixed[index_of(*c.fixed_to)].push_back(c.id);
      residual[index_of(*c.fixed_to)] -= c.demand;
    } else {
      free_ids.push_back(c.id);
    }
  }
  if (residual[0] < 0 || residual[1] < 0)
    throw InfeasibleError("fixed customers alone exceed a vehicle's capacity");

  auto usable = [&](const std::vector<int> (&routes)[2]) {
    bool has1 = !routes[0].empty() || !fixed[0].empty();
    bool has2 = !routes[1].empty() || !fixed[1].empty();
    return has1 && (has2 || allow_empty_vehicle2);
  };

  std::vector<int> routes[2];
  bool ok = false;
  std::bernoulli_distribution coin(0.5);
  for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
    std::shuffle(free_ids.begin(), free_ids.end(), rng);
    routes[0].clear();
    routes[1].clear();
    Demand left[2] = {residual[0], residual[1]};
    ok = true;
    for (int id : free_ids) {
      const Demand w = inst.customer(id).demand;
      int pick = coin(rng) ? 0 : 1;
      if (w > left[pick]) pick = 1 - pick;
      if (w > left[pick]) {
        ok = false;
        break;
      }
      left[pick] -= w;
      routes[pick].push_back(id);
    }
    ok = ok && usable(routes);
  }
  if (!ok) {
    // Repair: largest demands first, each to the vehicle with more room.
    std::vector<int> order = free_ids;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return inst.customer(a).demand > inst.customer(b).demand; });
    routes[0].clear();
    routes[1].clear();
    Demand left[2] = {residual[0], residual[1]};
    ok = true;
    for (int id : order) {
      const Demand w = inst.customer(id).demand;
      int pick = left[0] >= left[1] ? 0 : 1;
      if (w > left[pick]) pick = 1 - pick;
      if (w > left[pick]) {
        ok = false;
        break;
      }
      left[pick] -= w;
      routes[pick].push_back(id);
    }
    if (ok && routes[0].empty() && fixed[0].empty() && !routes[1].empty() &&
        inst.customer(routes[1].back()).demand <= left[0]) {
      routes[0].push_back(routes[1].back());
      routes[1].pop_back();
    }
    ok = ok && usable(routes);
    if (!ok) throw InfeasibleError("could not allocate customers to the two vehicles");
    std::shuffle(routes[0].begin(), routes[0].end(), rng);
    std::shuffle(routes[1].begin(), routes[1].end(), rng);
  }

  std::vector<Visit> visits[2];
  for (int k = 0; k < 2; ++k)
    for (int id : routes[k])
      visits[k].push_back({id, coin(rng) ? Orientation::FromRight : Orientation::FromLeft});
  for (Vehicle m : {Vehicle::One, Vehicle::Two})
    for (int id : fixed[index_of(m)]) detail::cheapest_insertion(inst, visits[index_of(m)], id, m);

  std::vector<Visit> all = visits[0];
  all.push_back({0, Orientation::FromLeft});
  all.insert(all.end(), visits[1].begin(), visits[1].end());
  return make_solution(inst, std::move(all));
}

using RestartTraceSink = std::function<void(int restart, const TraceRecord&)>;

// One restart of the pipeline.
inline TwoRouteSolution run_restart(const Instance& inst, const SolverParams& p, int restart,
                                    RestartTrace& trace, const RestartTraceSink& sink = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  auto rng = restart_rng(p.seed, restart);
  TwoRouteSolution sol = random_allocation(inst, rng, p.allow_empty_vehicle2);
  sol = improve_routes(inst, sol);
  trace.restart = restart;
  trace.initial_cost = sol.cost;

  if (p.sliding) {
    SlidingOptions opts;
    opts.config = p.heuristic;
    opts.restart_on_improve = p.restart_on_improve;
    opts.dp.cap = p.dp_cap;
    opts.dp.allow_empty_vehicle2 = p.allow_empty_vehicle2;
    if (sink) opts.trace = [&](const TraceRecord& r) { sink(restart, r); };
    SlidingStats stats;
    Cost before;
    do {
      before = sol.cost;
      sol = improve(inst, std::move(sol), opts, &stats);
      sol = improve_routes(inst, sol);
      ++trace.rounds;
    } while (sol.cost < before);
    trace.dp_solves = stats.dp_solves;
    trace.improvements = stats.improvements;
    trace.effective_s = stats.effective_s;
  }
  trace.final_cost = sol.cost;
  trace.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sol;
}

inline MultistartResult multistart_solve(const Instance& inst, const SolverParams& p,
                                         const RestartTraceSink& sink = {}) {
  if (p.restarts < 1) throw Error("restarts must be at least 1");
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };

  std::vector<std::optional<TwoRouteSolution>> found(static_cast<std::size_t>(p.restarts));
  MultistartResult result;
  result.restarts.resize(static_cast<std::size_t>(p.restarts));

  std::mutex sink_mutex;
  RestartTraceSink guarded;
  if (sink)
    guarded = [&](int r, const TraceRecord& rec) {
      std::lock_guard<std::mutex> lock(sink_mutex);
      sink(r, rec);
    };

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= p.restarts) return;
      auto& trace = result.restarts[static_cast<std::size_t>(r)];
      trace.restart = r;
      if (p.time_limit && elapsed() >= *p.time_limit) {
        trace.skipped = true;
        continue;
      }
      try {
        found[static_cast<std::size_t>(r)] = run_restart(inst, p, r, trace, guarded);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(p.restarts);
        return;
      }
    }
  };

  const int threads = std::clamp(p.parallel_restarts, 1, p.restarts);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (int r = 0; r < p.restarts; ++r) {
    const auto& sol = found[static_cast<std::size_t>(r)];
    if (sol && (result.best_restart < 0 || sol->cost < result.best.cost)) {
      result.best = *sol;
      result.best_restart = r;
    }
  }
  if (result.best_restart < 0) throw Error("time limit reached before the first restart finished");
  result.seconds = elapsed();
  return result;
}

}  // namespace vrp2
