#pragma once

// Shared fixtures for the unit and acceptance tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mobiplan/core.hpp"
#include "mobiplan/io.hpp"
#include "mobiplan/kinematics.hpp"

namespace mobiplan::testing {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
int uniform_int(Rng& rng, int lo, int hi);  // inclusive

/// Arm whose reach matches the workcell region below
/// (x_s 0.22, z_s 0.64 at a 130 degree mean polar angle).
RobotParams workcell_robot();

/// X_min 0.40, Z_min 0.40, Z_max 1.20, X_s 0.22, Z_s 0.64, R_min 0.51, R_max 0.84.
GeometricRegion workcell_region();

/// Reachability stand-in with a closed-form workspace: a point is reachable
/// iff its distance from the region centre (x_s, z_s) lies in [r_in, r_out],
/// whatever the tool direction. The returned configuration is all zeros.
class ShellArm final : public ArmModel {
 public:
  ShellArm(RobotParams params, double r_in, double r_out);

  const RobotParams& params() const override { return params_; }
  std::vector<JointVector> solve_ik(const BasePose& base, const Target& target, bool restrict_j1) const override;

  bool contains(Vec3 robot_frame_point) const;
  Vec2 centre() const { return centre_; }

 private:
  RobotParams params_;
  double r_in_, r_out_;
  Vec2 centre_;
};

/// 288 front targets (azimuth -37..37 deg) and 48 back targets
/// (168..192 deg) on a 1 m workpiece, polar angles 110..150 deg.
TaskFile two_sided_task();

/// 264 targets on one flat face, polar 110..150 deg, azimuth 0.
TaskFile one_sided_task();

/// 12 front targets, small enough for a golden SVG.
TaskFile twelve_target_task();

/// Random feasible instance: every element lands in at least one set.
ScpInstance random_scp(Rng& rng, int n, int m, double density);

/// Everything a finished plan must satisfy. Returns human-readable
/// violations, empty when the plan is consistent.
std::vector<std::string> plan_violations(const Plan& plan, const TaskFile& task, const GeometricRegion& region,
                                         const ArmModel& arm);

/// Plan with every timing zeroed, for determinism comparisons.
Plan without_timings(Plan plan);

std::string read_text(const std::string& path);

}  // namespace mobiplan::testing
