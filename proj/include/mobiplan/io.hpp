#pragma once

// Task and plan files. Both are JSON. Task files carry angles in degrees;
// plan files store radians so a write/read cycle reproduces the Plan
// bit for bit.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mobiplan/core.hpp"
#include "mobiplan/scp.hpp"

namespace mobiplan {

struct FloorExtent {
  Vec2 origin;
  int nx = 0;
  int ny = 0;
  friend bool operator==(const FloorExtent&, const FloorExtent&) = default;
};

/// The three planes are always given. The sphere part is either given in
/// full or fitted from the reachability database.
struct RegionSpec {
  double x_min = 0.0;
  double z_min = 0.0;
  double z_max = 0.0;
  std::optional<GeometricRegion> explicit_region;
  friend bool operator==(const RegionSpec&, const RegionSpec&) = default;
};

struct TaskFile {
  std::vector<Target> targets;  // radians inside
  RobotParams robot;
  double voxel_size = 0.05;
  bool cache_database = true;
  double cell_size = 0.10;
  std::optional<FloorExtent> floor_extent;
  RegionSpec region;
  Solver solver = Solver::kLrg;
  int lrg_iters = 20;
  double h_scale = 1.0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::optional<BasePose> home_base;  // grid origin when absent
  JointVector home_joints{};

  /// Throws InvalidInput when a field is out of range.
  void validate() const;
};

/// Parses and validates. Errors name the offending location, e.g.
/// "task: /robot/l3: unknown key".
TaskFile read_task(std::istream& in);
TaskFile read_task_file(const std::string& path);
void write_task(std::ostream& out, const TaskFile& task);

void write_plan(std::ostream& out, const Plan& plan);
Plan read_plan(std::istream& in);
Plan read_plan_file(const std::string& path);

}  // namespace mobiplan
