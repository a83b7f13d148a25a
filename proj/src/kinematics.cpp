#include "mobiplan/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace mobiplan {

namespace {

// Two branches closer than this (rad) are the same configuration.
constexpr double kBranchMerge = 1e-7;

struct Frame {
  double c;
  double s;
};

Vec3 to_local(const Frame& f, Vec3 v) { return {f.c * v.x + f.s * v.y, -f.s * v.x + f.c * v.y, v.z}; }
Vec3 to_world(const Frame& f, Vec3 v) { return {f.c * v.x - f.s * v.y, f.s * v.x + f.c * v.y, v.z}; }

bool within(double q, double lim) { return std::abs(q) <= lim + kBoundaryTol; }

}  // namespace

AnalyticArm::AnalyticArm(RobotParams params) : params_(params) { params_.validate(); }

template <typename Sink>
void AnalyticArm::enumerate(const BasePose& base, const Target& target, bool restrict_j1,
                            Sink&& sink) const {
  const RobotParams& p = params_;
  const Frame frame{std::cos(base.yaw), std::sin(base.yaw)};
  const Vec3 dir = to_local(frame, target.direction());
  const Vec3 tip = to_local(frame, {target.x - base.x, target.y - base.y, target.z});
  const Vec3 wrist{tip.x - p.l * dir.x, tip.y - p.l * dir.y, tip.z - p.l * dir.z};
  if (wrist.z < 0.0) return;

  const double q1_lim = restrict_j1 ? p.j1_res : std::min(p.j1_lim, p.joint_limits[0]);
  const double rho = std::hypot(wrist.x, wrist.y);
  const double heading = rho > kBoundaryTol ? std::atan2(wrist.y, wrist.x) : 0.0;
  const double h = wrist.z - p.z_j2;
  const double cos_q3 = (rho * rho + h * h - p.l1 * p.l1 - p.l2 * p.l2) / (2.0 * p.l1 * p.l2);
  if (cos_q3 > 1.0 + kBoundaryTol || cos_q3 < -1.0 - kBoundaryTol) return;
  const double elbow = std::acos(std::clamp(cos_q3, -1.0, 1.0));
  const bool elbow_singular = elbow < kBranchMerge || kPi - elbow < kBranchMerge;

  for (int shoulder = 0; shoulder < 2; ++shoulder) {
    const double q1 = shoulder == 0 ? heading : normalize_azimuth(heading + kPi);
    if (!within(q1, q1_lim)) continue;
    const double r = shoulder == 0 ? rho : -rho;
    const double er_x = std::cos(q1), er_y = std::sin(q1);
    const double d_r = dir.x * er_x + dir.y * er_y;
    const double d_n = -dir.x * er_y + dir.y * er_x;
    const double q5 = std::asin(std::clamp(d_n, -1.0, 1.0));
    const double beta = std::hypot(d_r, dir.z) > kBoundaryTol ? std::atan2(d_r, dir.z) : 0.0;

    for (int branch = 0; branch < (elbow_singular ? 1 : 2); ++branch) {
      const double q3 = branch == 0 ? elbow : -elbow;
      const double q2 = normalize_azimuth(std::atan2(r, h) -
                                          std::atan2(p.l2 * std::sin(q3), p.l1 + p.l2 * std::cos(q3)));
      const double q4 = normalize_azimuth(beta - (q2 + q3));
      const JointVector q{q1, q2, q3, q4, q5, 0.0};
      bool ok = true;
      for (int k = 1; k < kNumJoints && ok; ++k) ok = within(q[k], p.joint_limits[k]);
      if (ok && sink(q)) return;
    }
  }
}

std::vector<JointVector> AnalyticArm::solve_ik(const BasePose& base, const Target& target,
                                               bool restrict_j1) const {
  std::vector<JointVector> out;
  enumerate(base, target, restrict_j1, [&](const JointVector& q) {
    out.push_back(q);
    return false;
  });
  std::sort(out.begin(), out.end(), [](const JointVector& a, const JointVector& b) {
    return std::tie(a[0], a[1], a[2]) < std::tie(b[0], b[1], b[2]);
  });
  return out;
}

bool AnalyticArm::is_reachable(const BasePose& base, const Target& target, bool restrict_j1) const {
  bool found = false;
  enumerate(base, target, restrict_j1, [&](const JointVector&) { return found = true; });
  return found;
}

ToolPose AnalyticArm::forward(const BasePose& base, const JointVector& q) const {
  const RobotParams& p = params_;
  const double c1 = std::cos(q[0]), s1 = std::sin(q[0]);
  const double a2 = q[1], a3 = q[1] + q[2], a4 = a3 + q[3];
  // Arm-plane coordinates: radial along joint-1 heading, lateral, vertical.
  const double cos5 = std::cos(q[4]), sin5 = std::sin(q[4]);
  const double axis_r = cos5 * std::sin(a4);
  const double axis_z = cos5 * std::cos(a4);
  const double axis_n = sin5;
  const double tip_r = p.l1 * std::sin(a2) + p.l2 * std::sin(a3) + p.l * axis_r;
  const double tip_z = p.z_j2 + p.l1 * std::cos(a2) + p.l2 * std::cos(a3) + p.l * axis_z;
  const double tip_n = p.l * axis_n;

  const Frame frame{std::cos(base.yaw), std::sin(base.yaw)};
  const Vec3 tip_local{c1 * tip_r - s1 * tip_n, s1 * tip_r + c1 * tip_n, tip_z};
  const Vec3 axis_local{c1 * axis_r - s1 * axis_n, s1 * axis_r + c1 * axis_n, axis_z};
  const Vec3 tip = to_world(frame, tip_local);
  return {{tip.x + base.x, tip.y + base.y, tip.z}, to_world(frame, axis_local)};
}

}  // namespace mobiplan
