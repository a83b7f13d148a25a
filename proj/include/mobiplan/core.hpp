#pragma once

// Domain types shared by every planning stage.
//
// Units: metres and radians everywhere inside the library. Degrees only
// appear at the task-file boundary (see io.hpp).

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mobiplan {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Inclusive slack used by every half-space and shell membership test.
inline constexpr double kBoundaryTol = 1e-12;

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

// ---------------------------------------------------------------------------
// Errors. The CLI maps each family onto a process exit code.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad task file, out-of-range parameter, non-finite value.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The task cannot be covered: some targets have no reachable floor point.
class InfeasibleTask : public Error {
 public:
  InfeasibleTask(const std::string& what, std::vector<int> uncovered)
      : Error(what), uncovered_(std::move(uncovered)) {}
  const std::vector<int>& uncovered() const { return uncovered_; }

 private:
  std::vector<int> uncovered_;
};

/// A promise made by an earlier stage was broken (e.g. a clustered target
/// has no IK solution at its base pose), or a solver hit a resource cap.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Wraps an angle into (-pi, pi]. Throws InvalidInput on NaN/inf.
double normalize_azimuth(double angle);

// ---------------------------------------------------------------------------

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// A 5D task point: tool-tip position plus tool-axis direction given as
/// polar angle theta (from +z) and azimuth phi (around +z).
struct Target {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  Vec3 position() const { return {x, y, z}; }
  /// Unit tool-axis direction.
  Vec3 direction() const;

  friend bool operator==(const Target&, const Target&) = default;
};

/// Validates and normalizes (phi wrapped into (-pi, pi]).
Target make_target(double x, double y, double z, double theta, double phi);

/// Planar mobile-base pose. `yaw` is the heading of the robot frame x' axis.
struct BasePose {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
  friend bool operator==(const BasePose&, const BasePose&) = default;
};

/// Regular grid of candidate base positions, row-major:
/// points[row * nx + col] = origin + (col, row) * cell_size.
struct FloorGrid {
  Vec2 origin;
  double cell_size = 0.1;
  int nx = 0;
  int ny = 0;
  std::vector<Vec2> points;

  std::size_t size() const { return points.size(); }
};

FloorGrid make_floor_grid(Vec2 origin, double cell_size, int nx, int ny);

/// Grid spanning the xy bounding box of `targets` inflated by `margin` on
/// every side, with the extent snapped outward to multiples of cell_size.
FloorGrid make_floor_grid_around(std::span<const Target> targets,
                                 double cell_size, double margin);

inline constexpr int kNumJoints = 6;

/// Kinematic parameters of the analytic arm on its mobile base.
struct RobotParams {
  double j1_lim = deg_to_rad(170.0);  // hardware limit of joint 1 (+/-)
  double j1_res = deg_to_rad(90.0);   // restricted joint-1 range for the database
  double z_j2 = 0.395;                // shoulder height above the floor
  double l1 = 0.445;                  // upper arm
  double l2 = 0.445;                  // forearm
  double l = 0.25;                    // wrist centre to tool tip
  /// Symmetric per-joint bounds. Entry 0 mirrors j1_lim.
  std::array<double, kNumJoints> joint_limits{deg_to_rad(170.0), deg_to_rad(135.0),
                                              deg_to_rad(150.0), 2.0,
                                              2.0,               deg_to_rad(360.0)};
  double polar_lo = deg_to_rad(110.0);
  double polar_hi = deg_to_rad(150.0);
  int n_sam = 10;

  /// Throws InvalidInput when an invariant does not hold.
  void validate() const;

  /// Reachable azimuthal width per base pose: 2 (j1_lim - j1_res).
  double max_azimuth_width() const { return 2.0 * (j1_lim - j1_res); }

  /// Evenly spaced sampling polar angles over [polar_lo, polar_hi].
  std::vector<double> sampling_polar() const;

  friend bool operator==(const RobotParams&, const RobotParams&) = default;
};

/// Inner approximation of the reachable workspace in the robot frame:
///   z_min <= z' <= z_max,  x' >= x_min,
///   r_min <= |(x' - x_s, y', z' - z_s)| <= r_max.
struct GeometricRegion {
  double x_min = 0.0;
  double z_min = 0.0;
  double z_max = 0.0;
  double x_s = 0.0;
  double z_s = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;

  void validate() const;
  friend bool operator==(const GeometricRegion&, const GeometricRegion&) = default;
};

using JointVector = std::array<double, kNumJoints>;

struct Cluster {
  std::vector<int> target_indices;  // ascending
  int floor_index = -1;             // grid point the base sits on
  BasePose base;
  friend bool operator==(const Cluster&, const Cluster&) = default;
};

/// Wall-clock seconds per pipeline stage, in execution order.
struct StageTiming {
  std::string stage;
  double seconds = 0.0;
  friend bool operator==(const StageTiming&, const StageTiming&) = default;
};

struct PlanStats {
  std::string solver;
  int cover_size = 0;     // sets chosen by the SCP solver
  int cluster_count = 0;  // after azimuthal splitting
  double base_tour_length = 0.0;
  double target_tour_length = 0.0;  // tool-tip path, home to home
  double config_path_length = 0.0;
  std::vector<StageTiming> timings;
  double total_seconds = 0.0;
  friend bool operator==(const PlanStats&, const PlanStats&) = default;
};

inline constexpr int kHome = -1;

struct Plan {
  std::vector<Cluster> clusters;
  /// Cluster indices in visiting order, with kHome at both ends.
  std::vector<int> base_sequence;
  /// Every target index exactly once; cluster blocks follow base_sequence.
  std::vector<int> target_sequence;
  /// target_sequence.size() + 2 entries; home configuration at both ends.
  std::vector<JointVector> config_sequence;
  BasePose home_base;
  PlanStats stats;
  friend bool operator==(const Plan&, const Plan&) = default;
};

// ---------------------------------------------------------------------------
// Set cover instance. Lives here because feasibility is a core concept.

/// Universe {0..n-1}; sets[j] holds the targets reachable from floor point j.
struct ScpInstance {
  int n = 0;
  std::vector<std::vector<int>> sets;
  std::shared_ptr<const FloorGrid> floor;  // may be null for abstract instances

  std::size_t m() const { return sets.size(); }
};

struct FeasibilityReport {
  bool feasible = false;
  std::vector<int> uncovered;
};

FeasibilityReport check_feasibility(const ScpInstance& inst);

}  // namespace mobiplan
