#pragma once

// H(s,l): sweep two windows of s customers over a solution, solve each
// reduced instance exactly, and keep the first strict improvement.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vrp2/aggregation.hpp"
#include "vrp2/dp.hpp"
#include "vrp2/model.hpp"

namespace vrp2 {

struct DisassemblyConfig {
  int s = 3;  // window size
  int l = 1;  // sliding step

  int reduced_size() const noexcept { return 2 * s + 6; }

  friend bool operator==(const DisassemblyConfig&, const DisassemblyConfig&) = default;
};

struct TraceRecord {
  int pos1 = 0;
  int pos2 = 0;
  int s = 0;
  Cost current_cost = 0;
  // Optimum of the reduced instance. With pruning on, a reduced instance
  // that cannot beat the current cost reports current_cost here.
  Cost small_cost = 0;
  bool accepted = false;
};

struct SlidingOptions {
  DisassemblyConfig config;
  // After an accepted step, start the sweep again from the first position.
  // Otherwise the sweep carries on from the same position index.
  bool restart_on_improve = true;
  // Bound the exact solver by the current cost.
  bool prune = true;
  DpOptions dp;
  std::function<void(const TraceRecord&)> trace;
};

struct SlidingStats {
  long dp_solves = 0;
  int improvements = 0;
  int sweeps = 0;
  int effective_s = 0;  // smallest window size used; below config.s on short routes
};

// Window positions in sweep order, 1-based on the route with the switch
// removed: S1 advances by l, and for each S1 the window S2 starts at the first
// legal position after it and advances by l to the end.
inline std::vector<std::pair<int, int>> sweep_positions(int k1, int k2, DisassemblyConfig cfg) {
  std::vector<std::pair<int, int>> out;
  const int total = k1 + k2;
  if (cfg.s < 1 || cfg.l < 1) return out;
  for (int pos1 = 1; pos1 <= k1 && pos1 + 2 * cfg.s - 1 <= total; pos1 += cfg.l) {
    for (int pos2 = std::max(pos1 + cfg.s, k1 - cfg.s + 2); pos2 + cfg.s - 1 <= total; pos2 += cfg.l)
      out.emplace_back(pos1, pos2);
  }
  return out;
}

// Returns a solution no worse than `sol`, at which a full sweep finds no
// strict improvement.
inline TwoRouteSolution improve(const Instance& inst, TwoRouteSolution sol, const SlidingOptions& opts,
                                SlidingStats* stats = nullptr) {
  const DisassemblyConfig cfg = opts.config;
  if (cfg.s < 1 || cfg.l < 1) throw Error("window size and step must be positive");
  if (cfg.reduced_size() > std::min(opts.dp.cap, kMaxDpItems))
    throw SizeError("H(" + std::to_string(cfg.s) + "," + std::to_string(cfg.l) + ") needs " +
                    std::to_string(cfg.reduced_size()) + " items, exact solver cap is " +
                    std::to_string(opts.dp.cap));
  SlidingStats local;
  SlidingStats& st = stats ? *stats : local;
  if (st.effective_s == 0) st.effective_s = cfg.s;

  ExactSolver solver(opts.dp);
  auto plan = [&](int& s_used) {
    const int k1 = static_cast<int>(sol.switch_position());
    const int k2 = static_cast<int>(sol.visits.size()) - 1 - k1;
    for (s_used = cfg.s; s_used >= 1; --s_used) {
      auto positions = sweep_positions(k1, k2, {s_used, cfg.l});
      if (!positions.empty()) return positions;
    }
    return std::vector<std::pair<int, int>>{};
  };

  for (;;) {
    int s_used = 0;
    auto positions = plan(s_used);
    if (positions.empty()) break;
    st.effective_s = std::min(st.effective_s, s_used);
    ++st.sweeps;
    bool improved = false;
    for (std::size_t k = 0; k < positions.size(); ++k) {
      const auto [pos1, pos2] = positions[k];
      Disassembly d = disassemble(sol, inst, s_used, pos1, pos2);
      std::optional<TwoRouteSolution> small;
      if (opts.prune) {
        small = solver.solve_below(d.small_instance, sol.cost);
      } else {
        small = solver.solve(d.small_instance);
      }
      ++st.dp_solves;
      const bool accept = small && small->cost < sol.cost;
      if (opts.trace) opts.trace({pos1, pos2, s_used, sol.cost, small ? small->cost : sol.cost, accept});
      if (!accept) continue;
      TwoRouteSolution lifted = lift_solution(d, *small);
      if (lifted.cost != small->cost)
        throw InternalError("lifted route costs " + cost_to_string(lifted.cost) + ", reduced route " +
                            cost_to_string(small->cost));
      sol = std::move(lifted);
      ++st.improvements;
      improved = true;
      if (opts.restart_on_improve) break;
      int s_next = 0;
      positions = plan(s_next);
      if (s_next != s_used) break;
    }
    if (!improved) break;
  }
  return sol;
}

}  // namespace vrp2
