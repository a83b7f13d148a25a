#include "mobiplan/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <limits>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "mobiplan/assignment.hpp"
#include "mobiplan/sequencing.hpp"

namespace mobiplan {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

class StageTimer {
 public:
  explicit StageTimer(std::vector<StageTiming>& out) : out_(out) {}

  template <typename F>
  decltype(auto) run(const char* stage, F&& f) {
    const auto t0 = Clock::now();
    struct Record {
      std::vector<StageTiming>& out;
      const char* stage;
      Clock::time_point t0;
      ~Record() { out.push_back({stage, seconds_since(t0)}); }
    } record{out_, stage, t0};
    return f();
  }

 private:
  std::vector<StageTiming>& out_;
};

double tip_path_length(std::span<const Target> targets, std::span<const int> order, Vec3 home) {
  Vec3 here = home;
  double sum = 0.0;
  for (int i : order) {
    const Vec3 p = targets[static_cast<std::size_t>(i)].position();
    sum += std::hypot(p.x - here.x, p.y - here.y, p.z - here.z);
    here = p;
  }
  return sum + std::hypot(home.x - here.x, home.y - here.y, home.z - here.z);
}

}  // namespace

std::string database_cache_path(const std::string& cache_dir, std::uint64_t key) {
  char name[64];
  std::snprintf(name, sizeof name, "mobiplan-%016" PRIx64 ".reachdb", key);
  return (std::filesystem::path(cache_dir) / name).string();
}

ReachabilityDatabase load_or_generate_database(const ArmModel& arm, double voxel_size,
                                               const std::string& cache_dir, unsigned threads,
                                               bool* from_cache) {
  const Box bounds = default_database_bounds(arm.params());
  const std::uint64_t key = database_key(arm.params(), voxel_size, bounds);
  if (from_cache) *from_cache = false;
  std::string path;
  if (!cache_dir.empty()) {
    path = database_cache_path(cache_dir, key);
    std::ifstream in(path, std::ios::binary);
    if (in) {
      std::uint64_t stored = 0;
      try {
        ReachabilityDatabase db = read_database(in, &stored);
        if (stored == key) {
          if (from_cache) *from_cache = true;
          return db;
        }
      } catch (const InvalidInput&) {
        // Unreadable sidecar: regenerate and overwrite it.
      }
    }
  }
  ReachabilityDatabase db = generate_database(arm, voxel_size, bounds, threads);
  if (!path.empty()) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (out) write_database(out, db, key);
  }
  return db;
}

std::shared_ptr<const FloorGrid> task_floor(const TaskFile& task, const GeometricRegion& region) {
  if (task.floor_extent) {
    return std::make_shared<const FloorGrid>(make_floor_grid(task.floor_extent->origin, task.cell_size,
                                                             task.floor_extent->nx, task.floor_extent->ny));
  }
  return std::make_shared<const FloorGrid>(
      make_floor_grid_around(task.targets, task.cell_size, std::abs(region.x_s) + region.r_max));
}

GeometricRegion task_region(const TaskFile& task, const ReachabilityDatabase* db) {
  if (task.region.explicit_region) return *task.region.explicit_region;
  if (!db) throw ContractViolation("task_region: fitting needs a reachability database");
  return fit_region(*db, task.region.x_min, task.region.z_min, task.region.z_max, task.robot);
}

PipelineResult run_pipeline(const TaskFile& task, const PipelineOptions& opts) {
  task.validate();
  const auto t_start = Clock::now();
  const std::shared_ptr<const ArmModel> arm =
      opts.arm ? opts.arm : std::make_shared<const AnalyticArm>(task.robot);

  PipelineResult result;
  Plan& plan = result.plan;
  std::vector<StageTiming>& timings = plan.stats.timings;
  StageTimer timer(timings);

  std::optional<ReachabilityDatabase> db;
  if (!task.region.explicit_region) {
    db = timer.run("database", [&] {
      return load_or_generate_database(*arm, task.voxel_size, task.cache_database ? opts.cache_dir : "",
                                       task.threads, &result.database_from_cache);
    });
  }
  result.region = timer.run("region_fit", [&] { return task_region(task, db ? &*db : nullptr); });

  const ScpInstance inst = timer.run("bigraph", [&] {
    result.floor = task_floor(task, result.region);
    return build_bigraph(task.targets, result.floor, result.region, task.threads);
  });
  if (opts.scp_dump) write_scp_exchange(*opts.scp_dump, inst);

  timer.run("feasibility", [&] {
    const FeasibilityReport report = check_feasibility(inst);
    if (!report.feasible) {
      std::string msg = "infeasible task: " + std::to_string(report.uncovered.size()) +
                        " target(s) reachable from no floor point:";
      for (std::size_t k = 0; k < report.uncovered.size() && k < 20; ++k) {
        msg += " " + std::to_string(report.uncovered[k]);
      }
      if (report.uncovered.size() > 20) msg += " ...";
      throw InfeasibleTask(msg, report.uncovered);
    }
  });

  result.cover = timer.run("scp_solve", [&] {
    SolverOptions so;
    so.lrg_iters = task.lrg_iters;
    so.seed = task.seed;
    CoverSolution sol = solve_cover(inst, task.solver, so);
    assign_nearest(sol, inst, task.targets);
    return sol;
  });

  plan.clusters = timer.run("assignment", [&] {
    return assign_clusters(result.cover, inst, task.targets, AzimuthLimit::from(task.robot));
  });

  plan.home_base = task.home_base.value_or(BasePose{result.floor->origin.x, result.floor->origin.y, 0.0});

  const std::vector<int> base_order = timer.run("base_tsp", [&] {
    TourProblem tour;
    tour.home = {plan.home_base.x, plan.home_base.y, 0.0, 0.0};
    for (const Cluster& c : plan.clusters) tour.nodes.push_back({c.base.x, c.base.y, 0.0, 0.0});
    std::vector<int> order = solve_tsp_2opt(tour, task.seed);
    plan.stats.base_tour_length = tour_length(tour, order);
    return order;
  });
  plan.base_sequence.push_back(kHome);
  plan.base_sequence.insert(plan.base_sequence.end(), base_order.begin(), base_order.end());
  plan.base_sequence.push_back(kHome);

  Vec3 home_tip{};
  if (const auto* analytic = dynamic_cast<const AnalyticArm*>(arm.get())) {
    home_tip = analytic->forward(plan.home_base, task.home_joints).tip;
  } else {
    home_tip = {plan.home_base.x, plan.home_base.y, task.robot.z_j2};
  }

  plan.target_sequence = timer.run("target_tsp", [&] {
    return solve_target_sequence(task.targets, plan.clusters, base_order, task.h_scale, task.seed, home_tip);
  });
  plan.stats.target_tour_length = tip_path_length(task.targets, plan.target_sequence, home_tip);

  const ConfigGraph graph = timer.run("ik_graph", [&] {
    return build_config_graph(*arm, task.targets, plan.clusters, plan.target_sequence, task.home_joints);
  });
  timer.run("config_dp", [&] {
    const ConfigPath path = solve_config_sequence(graph);
    plan.config_sequence.reserve(path.nodes.size());
    for (std::size_t k = 0; k < path.nodes.size(); ++k) {
      plan.config_sequence.push_back(graph.layers[k][static_cast<std::size_t>(path.nodes[k])]);
    }
    plan.stats.config_path_length = path.cost;
  });

  plan.stats.solver = solver_name(task.solver);
  plan.stats.cover_size = static_cast<int>(result.cover.chosen.size());
  plan.stats.cluster_count = static_cast<int>(plan.clusters.size());
  plan.stats.total_seconds = seconds_since(t_start);
  return result;
}

// ---------------------------------------------------------------------------

std::vector<BenchmarkRow> run_benchmark(const TaskFile& task, const BenchmarkSweep& sweep,
                                        const PipelineOptions& opts) {
  task.validate();
  if (sweep.solvers.empty() || sweep.grid_sizes.empty() || sweep.target_counts.empty()) {
    throw InvalidInput("benchmark: every sweep axis needs at least one value");
  }
  for (int n : sweep.target_counts) {
    if (n < 1 || static_cast<std::size_t>(n) > task.targets.size()) {
      throw InvalidInput("benchmark: target count " + std::to_string(n) + " outside 1.." +
                         std::to_string(task.targets.size()));
    }
  }
  for (double g : sweep.grid_sizes) {
    if (!(g > 0.0)) throw InvalidInput("benchmark: grid sizes must be positive");
  }

  const std::shared_ptr<const ArmModel> arm =
      opts.arm ? opts.arm : std::make_shared<const AnalyticArm>(task.robot);
  std::optional<ReachabilityDatabase> db;
  if (!task.region.explicit_region) {
    db = load_or_generate_database(*arm, task.voxel_size, task.cache_database ? opts.cache_dir : "", task.threads);
  }
  const GeometricRegion region = task_region(task, db ? &*db : nullptr);
  const AzimuthLimit limit = AzimuthLimit::from(task.robot);

  std::vector<BenchmarkRow> rows;
  for (Solver solver : sweep.solvers) {
    for (double grid : sweep.grid_sizes) {
      for (int n : sweep.target_counts) {
        BenchmarkRow row;
        row.solver = solver_name(solver);
        row.grid_size = grid;
        row.n = n;
        TaskFile sub = task;
        sub.targets.resize(static_cast<std::size_t>(n));
        sub.cell_size = grid;
        const auto t0 = Clock::now();
        try {
          const auto floor = task_floor(sub, region);
          row.floor_points = static_cast<int>(floor->size());
          const ScpInstance inst = build_bigraph(sub.targets, floor, region, task.threads);
          SolverOptions so;
          so.lrg_iters = task.lrg_iters;
          so.seed = task.seed;
          CoverSolution sol = solve_cover(inst, solver, so);
          assign_nearest(sol, inst, sub.targets);
          row.cover_size = static_cast<int>(sol.chosen.size());
          row.clusters = static_cast<int>(assign_clusters(sol, inst, sub.targets, limit).size());
        } catch (const Error& e) {
          row.error = e.what();
        }
        row.seconds = seconds_since(t0);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::vector<DatabaseTimingRow> benchmark_database(const ArmModel& arm, const std::vector<double>& voxel_sizes,
                                                  int repeats, unsigned threads) {
  if (repeats < 1) throw InvalidInput("benchmark_database: repeats must be >= 1");
  const Box bounds = default_database_bounds(arm.params());
  std::vector<DatabaseTimingRow> rows;
  for (double vs : voxel_sizes) {
    DatabaseTimingRow row;
    row.voxel_size = vs;
    row.seconds = std::numeric_limits<double>::infinity();
    for (int r = 0; r < repeats; ++r) {
      const auto t0 = Clock::now();
      const ReachabilityDatabase db = generate_database(arm, vs, bounds, threads);
      row.seconds = std::min(row.seconds, seconds_since(t0));
      row.voxels = db.size();
      row.valid = db.valid_count();
    }
    rows.push_back(row);
  }
  return rows;
}

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows) {
  out << "solver,grid_size,n,floor_points,cover_size,clusters,seconds,error\n";
  for (const BenchmarkRow& r : rows) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s,%.4g,%d,%d,%d,%d,%.6f,", r.solver.c_str(), r.grid_size, r.n,
                  r.floor_points, r.cover_size, r.clusters, r.seconds);
    out << buf << err << '\n';
  }
}

void write_database_timing_csv(std::ostream& out, const std::vector<DatabaseTimingRow>& rows) {
  out << "voxel_size,voxels,valid,seconds\n";
  for (const DatabaseTimingRow& r : rows) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.4g,%zu,%zu,%.6f\n", r.voxel_size, r.voxels, r.valid, r.seconds);
    out << buf;
  }
}

}  // namespace mobiplan
