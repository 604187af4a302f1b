// Command line front end: solve, generate, oracle, compare, bench.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "vrp2/vrp2.hpp"

namespace fs = std::filesystem;
using namespace vrp2;

namespace {

DisassemblyConfig parse_heuristic(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--heuristic", "expected S,L");
  try {
    DisassemblyConfig cfg{std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
    if (cfg.s < 1 || cfg.l < 1) throw std::invalid_argument("");
    return cfg;
  } catch (const std::exception&) {
    throw CLI::ValidationError("--heuristic", "expected two positive integers, got '" + text + "'");
  }
}

Instance as_instance(const AnyInstance& any) {
  if (const auto* tp = std::get_if<TwoPeriodInstance>(&any)) return build_instance(*tp);
  return std::get<Instance>(any);
}

std::string instance_label(const AnyInstance& any, const std::string& path) {
  std::string name = std::visit([](const auto& x) { return x.name; }, any);
  return name.empty() ? fs::path(path).stem().string() : name;
}

std::string tour_text(const std::vector<int>& tour) {
  std::ostringstream out;
  for (std::size_t k = 0; k < tour.size(); ++k) out << (k ? " " : "") << tour[k];
  return out.str();
}

// Report for one solved instance; times are left out with no_time.
std::string solve_summary(const AnyInstance& any, const std::string& label, const SolverParams& p,
                          const MultistartResult& r, bool no_time) {
  std::ostringstream out;
  out << "instance: " << label << '\n'
      << "heuristic: " << (p.sliding ? heuristic_label(p.heuristic) : std::string("none")) << '\n'
      << "restarts: " << p.restarts << " seed: " << p.seed << '\n'
      << "best_restart: " << r.best_restart << '\n';
  out << solution_to_text(r.best);
  if (const auto* tp = std::get_if<TwoPeriodInstance>(&any)) {
    PeriodTours tours = extract_tours(r.best, *tp);
    out << "PERIOD1: " << tour_text(tours.period1) << '\n'
        << "PERIOD2: " << tour_text(tours.period2) << '\n'
        << "LENGTHS: " << tour_length(*tp, tours.period1) << ' ' << tour_length(*tp, tours.period2) << '\n'
        << "BALANCED: " << (check_balance(tours, *tp) ? "yes" : "no") << '\n';
  }
  if (!no_time) out << "time_s: " << format_fixed(r.seconds) << '\n';
  return out.str();
}

struct SolveFlags {
  std::string heuristic = "3,1";
  int restarts = 48;
  std::uint64_t seed = 1;
  int dp_cap = 20;
  int parallel = 1;
  double time_limit = 0;
  bool no_sliding = false;
  bool continue_sweep = false;
  bool allow_empty = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--restarts", restarts, "Random restarts")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Seed of the restart streams");
    cmd->add_option("--dp-cap", dp_cap, "Largest exact sub-problem, items including the switch")
        ->check(CLI::Range(2, kMaxDpItems));
    cmd->add_option("--parallel", parallel, "Restarts run concurrently")->check(CLI::PositiveNumber);
    cmd->add_option("--time-limit", time_limit, "Seconds; later restarts are skipped")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--no-sliding", no_sliding, "Allocation and route improvement only");
    cmd->add_flag("--continue-sweep", continue_sweep, "Do not restart the sweep after an improvement");
    cmd->add_flag("--allow-empty-vehicle2", allow_empty, "Allow vehicle 2 to stay at its depot");
  }

  SolverParams params(const std::string& h) const {
    SolverParams p;
    p.heuristic = parse_heuristic(h);
    p.restarts = restarts;
    p.seed = seed;
    p.dp_cap = dp_cap;
    p.parallel_restarts = parallel;
    if (time_limit > 0) p.time_limit = time_limit;
    p.sliding = !no_sliding;
    p.restart_on_improve = !continue_sweep;
    p.allow_empty_vehicle2 = allow_empty;
    return p;
  }
};

std::vector<fs::path> instance_files(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto ext = e.path().extension().string();
    if (ext == ".txt" || ext == ".vrp" || ext == ".2vrp" || ext == ".2tsp") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-vehicle routing: exact sub-problems inside a sliding-window search"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Multistart search on one instance");
  std::string solve_instance, solve_out, solve_trace;
  bool solve_no_time = false;
  SolveFlags solve_flags;
  solve->add_option("--instance", solve_instance, "Instance file")->required()->check(CLI::ExistingFile);
  solve->add_option("--heuristic", solve_flags.heuristic, "Window size and step as S,L");
  solve->add_option("--out", solve_out, "Write the summary and solution here");
  solve->add_option("--trace", solve_trace, "Write one line per reduced instance solved");
  solve->add_flag("--no-time", solve_no_time, "Leave wall times out of the output");
  solve_flags.add_to(solve);

  // generate
  auto* gen = app.add_subcommand("generate", "Random two-period instances");
  int gen_n = 48, gen_m = 8, gen_count = 1, gen_range = 10000;
  std::uint64_t gen_seed = 1;
  std::string gen_dir = ".";
  gen->add_option("--n", gen_n, "Points, depot included")->check(CLI::Range(2, 100000));
  gen->add_option("--m", gen_m, "Both-period customers, depot included")->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", gen_seed, "First seed");
  gen->add_option("--count", gen_count, "Instances, seeds seed..seed+count-1")->check(CLI::PositiveNumber);
  gen->add_option("--range", gen_range, "Coordinates are drawn from [0, range]")->check(CLI::NonNegativeNumber);
  gen->add_option("--out-dir", gen_dir, "Output directory");

  // oracle
  auto* orc = app.add_subcommand("oracle", "Exhaustive optimum of a small instance");
  std::string orc_instance;
  bool orc_allow_empty = false;
  orc->add_option("--instance", orc_instance, "Instance file")->required()->check(CLI::ExistingFile);
  orc->add_flag("--allow-empty-vehicle2", orc_allow_empty, "Allow vehicle 2 to stay at its depot");

  // compare
  auto* cmp = app.add_subcommand("compare", "Percent differences against baseline costs");
  std::string cmp_results, cmp_baseline, cmp_out;
  cmp->add_option("--results", cmp_results, "CSV with instance,ours[,time_s]")->required()->check(CLI::ExistingFile);
  cmp->add_option("--baseline", cmp_baseline, "CSV with instance,pc,pc_manual")->required()->check(CLI::ExistingFile);
  cmp->add_option("--out", cmp_out, "Write the report CSV here");

  // bench
  auto* bench = app.add_subcommand("bench", "Run heuristics over a directory of instances");
  std::string bench_dir, bench_baseline, bench_out;
  std::vector<std::string> bench_heuristics;
  bool bench_no_time = false;
  SolveFlags bench_flags;
  bench->add_option("--dir", bench_dir, "Directory of instance files")->required()->check(CLI::ExistingDirectory);
  bench->add_option("--heuristic", bench_heuristics, "S,L; repeat for several (default 3,1 5,2 6,3)");
  bench->add_option("--baseline", bench_baseline, "CSV with instance,pc,pc_manual")->check(CLI::ExistingFile);
  bench->add_option("--out-dir", bench_out, "Write tables and per-heuristic CSV reports here");
  bench->add_flag("--no-time", bench_no_time, "Leave wall times out of the reports");
  bench_flags.add_to(bench);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      const AnyInstance any = parse_instance(solve_instance);
      const Instance inst = as_instance(any);
      const SolverParams p = solve_flags.params(solve_flags.heuristic);
      std::ofstream trace_file;
      RestartTraceSink sink;
      if (!solve_trace.empty()) {
        trace_file.open(solve_trace);
        if (!trace_file) throw Error("cannot write " + solve_trace);
        sink = [&](int r, const TraceRecord& rec) { trace_file << trace_line(r, rec) << '\n'; };
      }
      MultistartResult r = multistart_solve(inst, p, sink);
      if (trace_file.is_open()) {
        for (const auto& t : r.restarts) {
          trace_file << "restart=" << t.restart << (t.skipped ? " skipped" : "") << " initial="
                     << cost_to_string(t.initial_cost) << " final=" << cost_to_string(t.final_cost)
                     << " rounds=" << t.rounds << " dp_solves=" << t.dp_solves << " improvements=" << t.improvements;
          if (!solve_no_time) trace_file << " time_s=" << format_fixed(t.seconds);
          trace_file << '\n';
        }
      }
      const std::string text = solve_summary(any, instance_label(any, solve_instance), p, r, solve_no_time);
      std::cout << text;
      if (!solve_out.empty()) write_text_file(solve_out, text);
      return 0;
    }

    if (*gen) {
      if (gen_m >= gen_n) throw Error("--m must be smaller than --n");
      fs::create_directories(gen_dir);
      for (int k = 0; k < gen_count; ++k) {
        const std::uint64_t seed = gen_seed + static_cast<std::uint64_t>(k);
        TwoPeriodInstance tp = generate_instance(gen_n, gen_m, seed, gen_range);
        const fs::path path = fs::path(gen_dir) / (tp.name + ".txt");
        write_instance(tp, path.string());
        std::cout << path.string() << '\n';
      }
      return 0;
    }

    if (*orc) {
      const AnyInstance any = parse_instance(orc_instance);
      const Instance inst = as_instance(any);
      OracleOptions opts;
      opts.allow_empty_vehicle2 = orc_allow_empty;
      TwoRouteSolution best = brute_force(inst, opts);
      std::cout << "instance: " << instance_label(any, orc_instance) << '\n' << solution_to_text(best);
      return 0;
    }

    if (*cmp) {
      auto results = read_results_csv(read_text_file(cmp_results));
      auto baselines = read_baselines_csv(read_text_file(cmp_baseline));
      BenchmarkReport rep = compare_report(results, baselines);
      std::cout << rep.to_text();
      if (!cmp_out.empty()) write_text_file(cmp_out, rep.to_csv());
      return 0;
    }

    if (*bench) {
      if (bench_heuristics.empty()) bench_heuristics = {"3,1", "5,2", "6,3"};
      std::vector<BaselineRow> baselines;
      if (!bench_baseline.empty()) baselines = read_baselines_csv(read_text_file(bench_baseline));
      const auto files = instance_files(bench_dir);
      if (files.empty()) throw Error("no instance files in " + bench_dir);
      std::vector<std::string> names;
      std::vector<Instance> instances;
      for (const auto& f : files) {
        names.push_back(f.stem().string());
        instances.push_back(as_instance(parse_instance(f.string())));
      }
      if (!bench_out.empty()) fs::create_directories(bench_out);

      std::vector<HeuristicRun> runs;
      for (const auto& h : bench_heuristics) {
        const SolverParams p = bench_flags.params(h);
        HeuristicRun run;
        run.label = heuristic_label(p.heuristic);
        for (std::size_t k = 0; k < instances.size(); ++k) {
          MultistartResult r = multistart_solve(instances[k], p);
          ResultRow row{names[k], r.best.cost, std::nullopt};
          if (!bench_no_time) row.time_s = r.seconds;
          std::cerr << run.label << ' ' << names[k] << ' ' << r.best.cost << '\n';
          run.results.push_back(row);
        }
        if (!bench_out.empty()) {
          const std::string stem = "H" + std::to_string(p.heuristic.s) + "_" + std::to_string(p.heuristic.l);
          write_text_file((fs::path(bench_out) / (stem + ".csv")).string(),
                          compare_report(run.results, baselines).to_csv());
        }
        runs.push_back(std::move(run));
      }
      const std::string tables = appendix_table(names, baselines, runs, !bench_no_time) + "\n" +
                                 summary_table(baselines, runs, !bench_no_time);
      std::cout << tables;
      if (!bench_out.empty()) write_text_file((fs::path(bench_out) / "tables.txt").string(), tables);
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
