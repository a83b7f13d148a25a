// Command-line front end. Exit codes: 0 ok, 2 infeasible task, 3 invalid
// input, 4 internal contract violation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mobiplan/io.hpp"
#include "mobiplan/pipeline.hpp"
#include "mobiplan/svg.hpp"

namespace {

using namespace mobiplan;

constexpr int kExitInfeasible = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitContract = 4;

struct Overrides {
  std::optional<std::string> solver;
  std::optional<std::uint64_t> seed;
  std::optional<double> h_scale;
  std::optional<double> cell_size;
  std::optional<double> voxel_size;
  std::optional<unsigned> threads;
  bool no_cache = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--solver", solver, "greedy, lpr or lrg");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--h-scale", h_scale, "virtual separation scale (>= 1)");
    cmd->add_option("--cell-size", cell_size, "floor grid cell size (m)");
    cmd->add_option("--voxel-size", voxel_size, "reachability voxel size (m)");
    cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
    cmd->add_flag("--no-cache", no_cache, "do not read or write the database sidecar");
  }

  void apply(TaskFile& task) const {
    if (solver) {
      task.solver = parse_solver(*solver);
      if (task.solver == Solver::kExact) throw InvalidInput("--solver: expected greedy, lpr or lrg");
    }
    if (seed) task.seed = *seed;
    if (h_scale) task.h_scale = *h_scale;
    if (cell_size) task.cell_size = *cell_size;
    if (voxel_size) task.voxel_size = *voxel_size;
    if (threads) task.threads = *threads;
    if (no_cache) task.cache_database = false;
    task.validate();
  }
};

std::string task_dir(const std::string& task_path) {
  const auto dir = std::filesystem::path(task_path).parent_path();
  return dir.empty() ? "." : dir.string();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write " + path);
  return out;
}

template <typename T>
std::vector<T> split_list(const std::string& text, T (*parse)(const std::string&)) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) out.push_back(parse(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw InvalidInput("not a number: " + s);
  return v;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw InvalidInput("not an integer: " + s);
  return v;
}

Solver parse_solver_item(const std::string& s) { return parse_solver(s); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Base placement and task sequencing for a mobile manipulator"};
  app.require_subcommand(1);

  std::string task_path, out_path, svg_path, dump_path, plan_path;
  Overrides ov;

  auto* plan_cmd = app.add_subcommand("plan", "plan base poses and the visiting sequence for a task");
  plan_cmd->add_option("task", task_path, "task file (JSON)")->required();
  plan_cmd->add_option("-o,--output", out_path, "plan file to write (default: stdout)");
  plan_cmd->add_option("--svg", svg_path, "also render the plan to this SVG file");
  plan_cmd->add_option("--dump-scp", dump_path, "write the set cover instance in exchange format");
  ov.add_to(plan_cmd);

  std::string solvers = "greedy,lpr,lrg", grids, counts, voxel_sweep;
  int repeats = 3;
  auto* bench_cmd = app.add_subcommand("benchmark", "clustering sweep over solvers, grid sizes and target counts");
  bench_cmd->add_option("task", task_path, "task file (JSON)")->required();
  bench_cmd->add_option("--solvers", solvers, "comma-separated solver names");
  bench_cmd->add_option("--grid-sizes", grids, "comma-separated floor cell sizes (default: task value)");
  bench_cmd->add_option("--counts", counts, "comma-separated target counts (default: all targets)");
  bench_cmd->add_option("--voxel-sweep", voxel_sweep, "comma-separated voxel sizes for a database timing table");
  bench_cmd->add_option("--repeats", repeats, "database timing repeats (fastest kept)");
  bench_cmd->add_option("-o,--output", out_path, "CSV output (default: stdout)");
  ov.add_to(bench_cmd);

  auto* gen_cmd = app.add_subcommand("gen-db", "generate the reachability database for a task's robot");
  gen_cmd->add_option("task", task_path, "task file (JSON)")->required();
  gen_cmd->add_option("-o,--output", out_path, "database file (default: cache beside the task file)");
  ov.add_to(gen_cmd);

  auto* render_cmd = app.add_subcommand("render", "draw a plan as SVG");
  render_cmd->add_option("plan", plan_path, "plan file (JSON)")->required();
  render_cmd->add_option("task", task_path, "task file the plan was made for")->required();
  render_cmd->add_option("-o,--output", out_path, "SVG file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*plan_cmd) {
      TaskFile task = read_task_file(task_path);
      ov.apply(task);
      PipelineOptions opts;
      opts.cache_dir = task_dir(task_path);
      std::ofstream dump;
      if (!dump_path.empty()) {
        dump = open_out(dump_path);
        opts.scp_dump = &dump;
      }
      const PipelineResult result = run_pipeline(task, opts);
      if (out_path.empty()) {
        write_plan(std::cout, result.plan);
      } else {
        auto out = open_out(out_path);
        write_plan(out, result.plan);
      }
      if (!svg_path.empty()) open_out(svg_path) << render_svg(result.plan, task.targets);
      const PlanStats& s = result.plan.stats;
      std::cerr << "solver " << s.solver << ": " << s.cluster_count << " base pose(s) from " << s.cover_size
                << " chosen floor point(s), " << s.total_seconds << " s\n";
    } else if (*bench_cmd) {
      TaskFile task = read_task_file(task_path);
      ov.apply(task);
      PipelineOptions opts;
      opts.cache_dir = task_dir(task_path);
      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!out_path.empty()) {
        file = open_out(out_path);
        out = &file;
      }
      if (!voxel_sweep.empty()) {
        const AnalyticArm arm(task.robot);
        write_database_timing_csv(*out, benchmark_database(arm, split_list(voxel_sweep, parse_double), repeats,
                                                           task.threads));
      } else {
        BenchmarkSweep sweep;
        sweep.solvers = split_list(solvers, parse_solver_item);
        sweep.grid_sizes = grids.empty() ? std::vector<double>{task.cell_size} : split_list(grids, parse_double);
        sweep.target_counts = counts.empty() ? std::vector<int>{static_cast<int>(task.targets.size())}
                                             : split_list(counts, parse_int);
        write_benchmark_csv(*out, run_benchmark(task, sweep, opts));
      }
    } else if (*gen_cmd) {
      TaskFile task = read_task_file(task_path);
      ov.apply(task);
      const AnalyticArm arm(task.robot);
      if (out_path.empty()) {
        bool cached = false;
        const auto db = load_or_generate_database(arm, task.voxel_size, task_dir(task_path), task.threads, &cached);
        std::cerr << (cached ? "cached" : "generated") << " database: " << db.valid_count() << " of " << db.size()
                  << " voxels valid\n";
      } else {
        const Box bounds = default_database_bounds(task.robot);
        const auto db = generate_database(arm, task.voxel_size, bounds, task.threads);
        auto out = open_out(out_path);
        write_database(out, db, database_key(task.robot, task.voxel_size, bounds));
        std::cerr << "database: " << db.valid_count() << " of " << db.size() << " voxels valid\n";
      }
    } else if (*render_cmd) {
      const TaskFile task = read_task_file(task_path);
      const Plan plan = read_plan_file(plan_path);
      for (const Cluster& c : plan.clusters) {
        for (int i : c.target_indices) {
          if (i < 0 || static_cast<std::size_t>(i) >= task.targets.size()) {
            throw InvalidInput("plan refers to target " + std::to_string(i) + " which the task does not have");
          }
        }
      }
      for (int c : plan.base_sequence) {
        if (c != kHome && (c < 0 || static_cast<std::size_t>(c) >= plan.clusters.size())) {
          throw InvalidInput("plan: base_sequence refers to missing cluster " + std::to_string(c));
        }
      }
      const std::string svg = render_svg(plan, task.targets);
      if (out_path.empty()) {
        std::cout << svg;
      } else {
        open_out(out_path) << svg;
      }
    }
  } catch (const InfeasibleTask& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ContractViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitContract;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitContract;
  }
  return 0;
}
