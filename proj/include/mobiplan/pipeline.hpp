#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mobiplan/core.hpp"
#include "mobiplan/io.hpp"
#include "mobiplan/kinematics.hpp"
#include "mobiplan/reachability.hpp"
#include "mobiplan/scp.hpp"

namespace mobiplan {

struct PipelineOptions {
  /// Directory for reachability database sidecars; empty disables caching.
  std::string cache_dir;
  /// When set, the set cover instance is dumped here after bigraph building.
  std::ostream* scp_dump = nullptr;
  /// Arm override (tests); the task's AnalyticArm otherwise.
  std::shared_ptr<const ArmModel> arm;
};

/// Everything run_pipeline derived on the way to the plan.
struct PipelineResult {
  Plan plan;
  GeometricRegion region;
  std::shared_ptr<const FloorGrid> floor;
  CoverSolution cover;
  bool database_from_cache = false;
};

/// Loads the database from the cache or generates it, keyed by robot
/// parameters, voxel size and bounds. Sets `from_cache` when loaded.
ReachabilityDatabase load_or_generate_database(const ArmModel& arm, double voxel_size,
                                               const std::string& cache_dir, unsigned threads,
                                               bool* from_cache = nullptr);

std::string database_cache_path(const std::string& cache_dir, std::uint64_t key);

/// Floor grid for a task: the explicit extent, or the target footprint grown
/// by x_s + r_max.
std::shared_ptr<const FloorGrid> task_floor(const TaskFile& task, const GeometricRegion& region);

/// Region used by a task: explicit, or fitted to the database.
GeometricRegion task_region(const TaskFile& task, const ReachabilityDatabase* db);

/// database -> region -> bigraph -> feasibility -> set cover -> clusters ->
/// base tour -> target tour -> IK layers -> configuration path.
/// Throws InfeasibleTask (with uncovered targets), InvalidInput or
/// ContractViolation.
PipelineResult run_pipeline(const TaskFile& task, const PipelineOptions& opts = {});

// ---------------------------------------------------------------------------

struct BenchmarkSweep {
  std::vector<Solver> solvers;
  std::vector<double> grid_sizes;
  std::vector<int> target_counts;  // first n targets of the task
};

struct BenchmarkRow {
  std::string solver;
  double grid_size = 0.0;
  int n = 0;
  int floor_points = 0;
  int cover_size = 0;
  int clusters = 0;
  double seconds = 0.0;  // bigraph + set cover + cluster assignment
  std::string error;     // empty on success
};

std::vector<BenchmarkRow> run_benchmark(const TaskFile& task, const BenchmarkSweep& sweep,
                                        const PipelineOptions& opts = {});

struct DatabaseTimingRow {
  double voxel_size = 0.0;
  std::size_t voxels = 0;
  std::size_t valid = 0;
  double seconds = 0.0;  // fastest of the repeats
};

std::vector<DatabaseTimingRow> benchmark_database(const ArmModel& arm, const std::vector<double>& voxel_sizes,
                                                  int repeats, unsigned threads);

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows);
void write_database_timing_csv(std::ostream& out, const std::vector<DatabaseTimingRow>& rows);

}  // namespace mobiplan
