#pragma once

#include <vector>

#include "mobiplan/core.hpp"

namespace mobiplan {

/// Reachability oracle consumed by database generation and sequencing.
/// Implementations must be deterministic and safe to query concurrently.
class ArmModel {
 public:
  virtual ~ArmModel() = default;

  virtual const RobotParams& params() const = 0;

  /// All admissible joint solutions placing the tool tip on `target` with
  /// the tool axis along the target direction, for a base at `base`.
  /// With `restrict_j1`, joint 1 is confined to +/- j1_res instead of j1_lim.
  virtual std::vector<JointVector> solve_ik(const BasePose& base, const Target& target,
                                            bool restrict_j1) const = 0;

  virtual bool is_reachable(const BasePose& base, const Target& target, bool restrict_j1) const {
    return !solve_ik(base, target, restrict_j1).empty();
  }
};

struct ToolPose {
  Vec3 tip;
  Vec3 axis;  // unit
};

/// Analytic 6-joint arm: joint 1 about the vertical axis through the base
/// origin, shoulder (joint 2) at height z_j2, a planar 2R arm (l1, l2), a
/// pitch/yaw wrist (joints 4, 5) and a tool of length l. Joint 6 rolls
/// about the tool axis and is pinned to 0.
///
/// Joint conventions: q2 is the upper-arm angle from vertical, positive
/// leaning along the joint-1 heading; q3 is the elbow angle relative to the
/// upper arm; q4 pitches the tool in the arm plane relative to the forearm;
/// q5 tilts it out of the arm plane.
class AnalyticArm final : public ArmModel {
 public:
  explicit AnalyticArm(RobotParams params);

  const RobotParams& params() const override { return params_; }

  /// Up to four branches (shoulder front/back x elbow up/down), filtered by
  /// joint limits and floor penetration, sorted by (q1, q2, q3).
  std::vector<JointVector> solve_ik(const BasePose& base, const Target& target,
                                    bool restrict_j1) const override;

  bool is_reachable(const BasePose& base, const Target& target, bool restrict_j1) const override;

  ToolPose forward(const BasePose& base, const JointVector& q) const;

 private:
  template <typename Sink>
  void enumerate(const BasePose& base, const Target& target, bool restrict_j1, Sink&& sink) const;

  RobotParams params_;
};

}  // namespace mobiplan
