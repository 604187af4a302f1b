#pragma once

// Comparison reports against published baselines, the benchmark tables, and
// the plain-text solution and trace records written by the CLI.
//
// Percentages are (ours - baseline) / baseline * 100, negative when ours is
// shorter, printed with two decimals.

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vrp2/cost.hpp"
#include "vrp2/model.hpp"
#include "vrp2/sliding_search.hpp"

namespace vrp2 {

struct BaselineRow {
  std::string instance;
  std::optional<Cost> pc;
  std::optional<Cost> pc_manual;
};

struct ResultRow {
  std::string instance;
  Cost ours = 0;
  std::optional<double> time_s;
};

struct ReportRow {
  std::string instance;
  std::optional<Cost> pc;
  std::optional<Cost> pc_manual;
  Cost ours = 0;
  std::optional<double> time_s;
  std::optional<double> delta_pc;
  std::optional<double> delta_manual;
};

struct SummaryStats {
  int count = 0;
  double mean = 0;
  double best = 0;   // most negative
  double worst = 0;
  int improved = 0;  // strictly shorter than the baseline
};

inline double percent_change(Cost ours, Cost baseline) {
  return (static_cast<double>(ours) - static_cast<double>(baseline)) / static_cast<double>(baseline) * 100.0;
}

inline std::string format_fixed(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::string format_percent(double v) { return format_fixed(v) + "%"; }

inline std::optional<SummaryStats> summarize(const std::vector<std::pair<Cost, std::optional<Cost>>>& pairs) {
  SummaryStats st;
  double sum = 0;
  for (const auto& [ours, base] : pairs) {
    if (!base || *base <= 0) continue;
    const double d = percent_change(ours, *base);
    if (st.count == 0) {
      st.best = st.worst = d;
    } else {
      st.best = std::min(st.best, d);
      st.worst = std::max(st.worst, d);
    }
    sum += d;
    ++st.count;
    st.improved += ours < *base;
  }
  if (st.count == 0) return std::nullopt;
  st.mean = sum / st.count;
  return st;
}

struct BenchmarkReport {
  std::vector<ReportRow> rows;
  std::optional<SummaryStats> vs_pc;
  std::optional<SummaryStats> vs_manual;

  std::string to_csv() const {
    std::ostringstream out;
    out << "instance,baseline_pc,baseline_manual,ours,time_s,delta_pc_percent\n";
    for (const auto& r : rows) {
      out << r.instance << ',' << (r.pc ? std::to_string(*r.pc) : "") << ','
          << (r.pc_manual ? std::to_string(*r.pc_manual) : "") << ',' << r.ours << ','
          << (r.time_s ? format_fixed(*r.time_s) : "") << ',' << (r.delta_pc ? format_fixed(*r.delta_pc) : "")
          << '\n';
    }
    return out.str();
  }

  std::string to_text() const {
    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-12s %10s %10s %10s %9s %9s %9s\n", "instance", "PC", "PC+manual", "ours",
                  "time_s", "vs PC", "vs manual");
    out << buf;
    auto opt_cost = [](const std::optional<Cost>& c) { return c ? std::to_string(*c) : std::string("-"); };
    auto opt_pct = [](const std::optional<double>& p) { return p ? format_percent(*p) : std::string("-"); };
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%-12s %10s %10s %10lld %9s %9s %9s\n", r.instance.c_str(),
                    opt_cost(r.pc).c_str(), opt_cost(r.pc_manual).c_str(), static_cast<long long>(r.ours),
                    r.time_s ? format_fixed(*r.time_s).c_str() : "-", opt_pct(r.delta_pc).c_str(),
                    opt_pct(r.delta_manual).c_str());
      out << buf;
    }
    auto line = [&](const char* label, const std::optional<SummaryStats>& st) {
      if (!st) {
        out << label << ": no baselines\n";
        return;
      }
      out << label << ": mean " << format_percent(st->mean) << ", best " << format_percent(st->best) << ", worst "
          << format_percent(st->worst) << ", improved " << st->improved << "/" << st->count << '\n';
    };
    line("vs PC", vs_pc);
    line("vs PC+manual", vs_manual);
    return out.str();
  }
};

// Rows follow the order of `results`; a result without a baseline gets no
// percentage and is left out of the summary.
inline BenchmarkReport compare_report(const std::vector<ResultRow>& results,
                                      const std::vector<BaselineRow>& baselines) {
  std::map<std::string, const BaselineRow*> by_name;
  for (const auto& b : baselines) by_name[b.instance] = &b;
  BenchmarkReport rep;
  std::vector<std::pair<Cost, std::optional<Cost>>> vs_pc, vs_manual;
  for (const auto& r : results) {
    ReportRow row;
    row.instance = r.instance;
    row.ours = r.ours;
    row.time_s = r.time_s;
    if (auto it = by_name.find(r.instance); it != by_name.end()) {
      row.pc = it->second->pc;
      row.pc_manual = it->second->pc_manual;
    }
    if (row.pc && *row.pc > 0) row.delta_pc = percent_change(r.ours, *row.pc);
    if (row.pc_manual && *row.pc_manual > 0) row.delta_manual = percent_change(r.ours, *row.pc_manual);
    vs_pc.emplace_back(r.ours, row.pc);
    vs_manual.emplace_back(r.ours, row.pc_manual);
    rep.rows.push_back(std::move(row));
  }
  rep.vs_pc = summarize(vs_pc);
  rep.vs_manual = summarize(vs_manual);
  return rep;
}

// --- CSV input ------------------------------------------------------------

namespace report_detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  for (char c : line) {
    if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  for (auto& f : out) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? "" : f.substr(b, e - b + 1);
  }
  return out;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::pair<int, std::vector<std::string>>> rows;  // (line, fields)

  int column(std::initializer_list<const char*> names) const {
    for (const char* n : names)
      for (std::size_t k = 0; k < header.size(); ++k)
        if (header[k] == n) return static_cast<int>(k);
    return -1;
  }
};

inline Table read_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    auto fields = split_csv_line(line);
    if (t.header.empty()) {
      t.header = std::move(fields);
    } else {
      t.rows.emplace_back(number, std::move(fields));
    }
  }
  if (t.header.empty()) throw ParseError(0, "empty CSV");
  return t;
}

inline std::optional<Cost> optional_cost(const std::vector<std::string>& f, int col, int line) {
  if (col < 0 || col >= static_cast<int>(f.size()) || f[static_cast<std::size_t>(col)].empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(f[static_cast<std::size_t>(col)], &used);
    if (used != f[static_cast<std::size_t>(col)].size() || v < 0) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad cost '" + f[static_cast<std::size_t>(col)] + "'");
  }
}

}  // namespace report_detail

// Columns: instance, pc (or baseline_pc), pc_manual (or baseline_manual).
inline std::vector<BaselineRow> read_baselines_csv(const std::string& text) {
  using namespace report_detail;
  Table t = read_csv(text);
  const int ci = t.column({"instance"});
  const int cp = t.column({"pc", "baseline_pc"});
  const int cm = t.column({"pc_manual", "baseline_manual"});
  if (ci < 0) throw ParseError(1, "baseline CSV lacks an instance column");
  if (cp < 0 && cm < 0) throw ParseError(1, "baseline CSV lacks pc / pc_manual columns");
  std::vector<BaselineRow> out;
  for (const auto& [line, f] : t.rows) {
    if (ci >= static_cast<int>(f.size())) throw ParseError(line, "short row");
    out.push_back({f[static_cast<std::size_t>(ci)], optional_cost(f, cp, line), optional_cost(f, cm, line)});
  }
  return out;
}

// Columns: instance, ours (or cost), optional time_s.
inline std::vector<ResultRow> read_results_csv(const std::string& text) {
  using namespace report_detail;
  Table t = read_csv(text);
  const int ci = t.column({"instance"});
  const int co = t.column({"ours", "cost"});
  const int ct = t.column({"time_s"});
  if (ci < 0 || co < 0) throw ParseError(1, "results CSV needs instance and ours columns");
  std::vector<ResultRow> out;
  for (const auto& [line, f] : t.rows) {
    auto cost = optional_cost(f, co, line);
    if (!cost || ci >= static_cast<int>(f.size())) throw ParseError(line, "row without a cost");
    ResultRow r{f[static_cast<std::size_t>(ci)], *cost, std::nullopt};
    if (ct >= 0 && ct < static_cast<int>(f.size()) && !f[static_cast<std::size_t>(ct)].empty()) {
      try {
        r.time_s = std::stod(f[static_cast<std::size_t>(ct)]);
      } catch (const std::exception&) {
        throw ParseError(line, "bad time '" + f[static_cast<std::size_t>(ct)] + "'");
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

// --- Benchmark tables -----------------------------------------------------

struct HeuristicRun {
  std::string label;  // e.g. "H(3,1)"
  std::vector<ResultRow> results;
};

inline std::string heuristic_label(DisassemblyConfig cfg) {
  return "H(" + std::to_string(cfg.s) + "," + std::to_string(cfg.l) + ")";
}

// One row per instance: PC, PC+manual, then time and length per heuristic.
inline std::string appendix_table(const std::vector<std::string>& instances,
                                  const std::vector<BaselineRow>& baselines,
                                  const std::vector<HeuristicRun>& runs, bool with_time = true) {
  std::map<std::string, const BaselineRow*> base;
  for (const auto& b : baselines) base[b.instance] = &b;
  std::ostringstream out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-12s %10s %10s", "Instance", "PC", "PC+manual");
  out << buf;
  for (const auto& r : runs) {
    if (with_time) {
      std::snprintf(buf, sizeof buf, " | %-8s %8s %10s", r.label.c_str(), "time", "length");
    } else {
      std::snprintf(buf, sizeof buf, " | %-8s %10s", r.label.c_str(), "length");
    }
    out << buf;
  }
  out << '\n';
  for (const auto& name : instances) {
    auto it = base.find(name);
    auto cost = [](const std::optional<Cost>& c) { return c ? std::to_string(*c) : std::string("-"); };
    std::snprintf(buf, sizeof buf, "%-12s %10s %10s", name.c_str(),
                  it == base.end() ? "-" : cost(it->second->pc).c_str(),
                  it == base.end() ? "-" : cost(it->second->pc_manual).c_str());
    out << buf;
    for (const auto& r : runs) {
      auto hit = std::find_if(r.results.begin(), r.results.end(), [&](const ResultRow& x) { return x.instance == name; });
      std::string len = hit == r.results.end() ? "-" : std::to_string(hit->ours);
      std::string tm = hit == r.results.end() || !hit->time_s ? "-" : format_fixed(*hit->time_s, 0);
      if (with_time) {
        std::snprintf(buf, sizeof buf, " | %-8s %8s %10s", "", tm.c_str(), len.c_str());
      } else {
        std::snprintf(buf, sizeof buf, " | %-8s %10s", "", len.c_str());
      }
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

// Mean / best / worst percentage and improved count per heuristic, against
// PC and PC+manual.
inline std::string summary_table(const std::vector<BaselineRow>& baselines, const std::vector<HeuristicRun>& runs,
                                 bool with_time = true) {
  std::ostringstream out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-12s", "");
  out << buf;
  for (const auto& r : runs) {
    std::string head = r.label;
    if (with_time) {
      double total = 0;
      int timed = 0;
      for (const auto& x : r.results)
        if (x.time_s) {
          total += *x.time_s;
          ++timed;
        }
      if (timed) head += " t_mean=" + format_fixed(total / timed, 0) + "s";
    }
    std::snprintf(buf, sizeof buf, " | %-25s", head.c_str());
    out << buf;
  }
  out << '\n';
  std::snprintf(buf, sizeof buf, "%-12s", "");
  out << buf;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    std::snprintf(buf, sizeof buf, " | %12s %12s", "PC", "PC+manual");
    out << buf;
  }
  out << '\n';

  std::vector<BenchmarkReport> reps;
  for (const auto& r : runs) reps.push_back(compare_report(r.results, baselines));
  auto row = [&](const char* label, auto pick) {
    std::snprintf(buf, sizeof buf, "%-12s", label);
    out << buf;
    for (const auto& rep : reps) {
      std::snprintf(buf, sizeof buf, " | %12s %12s", pick(rep.vs_pc).c_str(), pick(rep.vs_manual).c_str());
      out << buf;
    }
    out << '\n';
  };
  auto pct = [](auto field) {
    return [field](const std::optional<SummaryStats>& st) {
      return st ? format_percent(field(*st)) : std::string("-");
    };
  };
  row("Mean", pct([](const SummaryStats& s) { return s.mean; }));
  row("Best", pct([](const SummaryStats& s) { return s.best; }));
  row("Worst", pct([](const SummaryStats& s) { return s.worst; }));
  row("Improved #", [](const std::optional<SummaryStats>& st) {
    return st ? std::to_string(st->improved) + "/" + std::to_string(st->count) : std::string("-");
  });
  return out.str();
}

// --- Solutions and traces -------------------------------------------------

// One visit per line: id and L / R for the entry side.
inline std::string solution_to_text(const TwoRouteSolution& sol) {
  std::ostringstream out;
  out << "COST: " << cost_to_string(sol.cost) << '\n'
      << "LOADS: " << sol.loads[0] << ' ' << sol.loads[1] << '\n'
      << "VISITS:";
  for (const Visit& v : sol.visits) out << ' ' << v.id << (v.dir == Orientation::FromLeft ? 'L' : 'R');
  out << '\n';
  return out.str();
}

inline std::string trace_line(int restart, const TraceRecord& r) {
  std::ostringstream out;
  out << "restart=" << restart << " s=" << r.s << " pos1=" << r.pos1 << " pos2=" << r.pos2
      << " current=" << cost_to_string(r.current_cost) << " small=" << cost_to_string(r.small_cost)
      << " accepted=" << (r.accepted ? 1 : 0);
  return out.str();
}

}  // namespace vrp2
