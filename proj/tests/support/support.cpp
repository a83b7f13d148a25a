#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mobiplan/oracles.hpp"
#include "mobiplan/reachability.hpp"

namespace mobiplan::testing {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

RobotParams workcell_robot() {
  RobotParams p;
  p.z_j2 = 0.825;
  p.l = 0.287;
  p.l1 = 0.475;
  p.l2 = 0.475;
  return p;
}

GeometricRegion workcell_region() { return {0.40, 0.40, 1.20, 0.22, 0.64, 0.51, 0.84}; }

ShellArm::ShellArm(RobotParams params, double r_in, double r_out)
    : params_(std::move(params)), r_in_(r_in), r_out_(r_out) {
  centre_ = region_centre(params_, params_.sampling_polar());
}

bool ShellArm::contains(Vec3 p) const {
  const double r = std::hypot(p.x - centre_.x, p.y, p.z - centre_.y);
  return r >= r_in_ && r <= r_out_;
}

std::vector<JointVector> ShellArm::solve_ik(const BasePose& base, const Target& t, bool) const {
  const double c = std::cos(base.yaw), s = std::sin(base.yaw);
  const double dx = t.x - base.x, dy = t.y - base.y;
  if (!contains({c * dx + s * dy, -s * dx + c * dy, t.z})) return {};
  return {JointVector{}};
}

namespace {

TaskFile base_task() {
  TaskFile task;
  task.robot = workcell_robot();
  task.region.x_min = 0.40;
  task.region.z_min = 0.40;
  task.region.z_max = 1.20;
  task.region.explicit_region = workcell_region();
  task.solver = Solver::kLrg;
  task.cell_size = 0.10;
  task.cache_database = false;
  return task;
}

double lerp(double a, double b, int k, int count) { return count <= 1 ? a : a + (b - a) * k / (count - 1); }

}  // namespace

TaskFile two_sided_task() {
  TaskFile task = base_task();
  // Front: an arc of radius 0.83 m whose inward normals fan over +/-37 deg,
  // 1 m long in y.
  const double rho = 0.83;
  for (int col = 0; col < 24; ++col) {
    const double phi = deg_to_rad(lerp(-37.0, 37.0, col, 24));
    for (int row = 0; row < 12; ++row) {
      const double z = lerp(0.55, 1.05, row, 12);
      const double theta = deg_to_rad(lerp(110.0, 150.0, row, 12));
      task.targets.push_back(make_target(rho - rho * std::cos(phi), -rho * std::sin(phi), z, theta, phi));
    }
  }
  // Back: a flat strip facing -x.
  for (int col = 0; col < 12; ++col) {
    const double phi = deg_to_rad(lerp(168.0, 192.0, col, 12));
    for (int row = 0; row < 4; ++row) {
      const double z = lerp(0.65, 0.95, row, 4);
      const double theta = deg_to_rad(lerp(110.0, 150.0, row, 4));
      task.targets.push_back(make_target(0.45, lerp(-0.3, 0.3, col, 12), z, theta, phi));
    }
  }
  return task;
}

TaskFile one_sided_task() {
  TaskFile task = base_task();
  for (int col = 0; col < 24; ++col) {
    for (int row = 0; row < 11; ++row) {
      task.targets.push_back(make_target(0.0, lerp(-0.5, 0.5, col, 24), lerp(0.55, 1.05, row, 11),
                                         deg_to_rad(lerp(110.0, 150.0, row, 11)), 0.0));
    }
  }
  return task;
}

TaskFile twelve_target_task() {
  TaskFile task = base_task();
  for (int col = 0; col < 4; ++col) {
    for (int row = 0; row < 3; ++row) {
      const double phi = deg_to_rad(lerp(-30.0, 30.0, col, 4));
      task.targets.push_back(make_target(0.1 * col * col / 3.0, lerp(-0.45, 0.45, col, 4), lerp(0.6, 1.0, row, 3),
                                         deg_to_rad(lerp(115.0, 145.0, row, 3)), phi));
    }
  }
  task.home_base = BasePose{-1.0, -1.0, 0.0};
  return task;
}

ScpInstance random_scp(Rng& rng, int n, int m, double density) {
  ScpInstance inst;
  inst.n = n;
  inst.sets.assign(static_cast<std::size_t>(m), {});
  std::bernoulli_distribution take(density);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      if (take(rng)) inst.sets[static_cast<std::size_t>(j)].push_back(i);
    }
  }
  for (int i = 0; i < n; ++i) {
    const bool hit = std::any_of(inst.sets.begin(), inst.sets.end(), [&](const std::vector<int>& s) {
      return std::binary_search(s.begin(), s.end(), i);
    });
    if (!hit) {
      auto& s = inst.sets[static_cast<std::size_t>(uniform_int(rng, 0, m - 1))];
      s.insert(std::lower_bound(s.begin(), s.end(), i), i);
    }
  }
  return inst;
}

std::vector<std::string> plan_violations(const Plan& plan, const TaskFile& task, const GeometricRegion& region,
                                         const ArmModel& arm) {
  std::vector<std::string> bad;
  const std::size_t n = task.targets.size();
  const double half_width = task.robot.max_azimuth_width() / 2.0;

  // Partition of the universe.
  std::vector<int> owner(n, -1);
  for (std::size_t c = 0; c < plan.clusters.size(); ++c) {
    for (int i : plan.clusters[c].target_indices) {
      if (i < 0 || static_cast<std::size_t>(i) >= n) {
        bad.push_back("cluster " + std::to_string(c) + " names unknown target " + std::to_string(i));
        continue;
      }
      if (owner[static_cast<std::size_t>(i)] >= 0) bad.push_back("target " + std::to_string(i) + " in two clusters");
      owner[static_cast<std::size_t>(i)] = static_cast<int>(c);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (owner[i] < 0) bad.push_back("target " + std::to_string(i) + " in no cluster");
  }

  // Base admissibility: region membership and heading within half the
  // azimuth budget for every member.
  for (std::size_t c = 0; c < plan.clusters.size(); ++c) {
    const Cluster& cl = plan.clusters[c];
    for (int i : cl.target_indices) {
      if (i < 0 || static_cast<std::size_t>(i) >= n) continue;
      const Target& t = task.targets[static_cast<std::size_t>(i)];
      if (!oracle::membership(region, t, {cl.base.x, cl.base.y})) {
        bad.push_back("target " + std::to_string(i) + " outside the region of cluster " + std::to_string(c));
      }
      double off = std::remainder(t.phi - cl.base.yaw, kTwoPi);
      if (std::abs(off) > half_width + 1e-9) {
        bad.push_back("target " + std::to_string(i) + " azimuth off the heading of cluster " + std::to_string(c) +
                      " by " + std::to_string(rad_to_deg(off)) + " deg");
      }
    }
  }

  // Base sequence: home, every cluster once, home.
  if (plan.base_sequence.size() != plan.clusters.size() + 2 || plan.base_sequence.front() != kHome ||
      plan.base_sequence.back() != kHome) {
    bad.push_back("base_sequence is not home, clusters, home");
  } else {
    std::vector<int> mid(plan.base_sequence.begin() + 1, plan.base_sequence.end() - 1);
    std::sort(mid.begin(), mid.end());
    for (std::size_t k = 0; k < mid.size(); ++k) {
      if (mid[k] != static_cast<int>(k)) {
        bad.push_back("base_sequence is not a permutation of the clusters");
        break;
      }
    }
  }

  // Target sequence: permutation, cluster blocks in base order.
  std::vector<int> seq = plan.target_sequence;
  std::sort(seq.begin(), seq.end());
  bool perm = seq.size() == n;
  for (std::size_t k = 0; perm && k < n; ++k) perm = seq[k] == static_cast<int>(k);
  if (!perm) {
    bad.push_back("target_sequence is not a permutation of the targets");
  } else if (bad.empty()) {
    std::size_t pos = 0;
    for (std::size_t b = 1; b + 1 < plan.base_sequence.size(); ++b) {
      const int c = plan.base_sequence[b];
      const std::size_t size = plan.clusters[static_cast<std::size_t>(c)].target_indices.size();
      for (std::size_t k = 0; k < size; ++k, ++pos) {
        if (owner[static_cast<std::size_t>(plan.target_sequence[pos])] != c) {
          bad.push_back("target_sequence position " + std::to_string(pos) + " breaks cluster contiguity");
          k = size;
        }
      }
    }
  }

  // Configurations: home at both ends, each interior one reaches its target.
  if (plan.config_sequence.size() != n + 2) {
    bad.push_back("config_sequence has " + std::to_string(plan.config_sequence.size()) + " entries, expected " +
                  std::to_string(n + 2));
  } else {
    if (plan.config_sequence.front() != task.home_joints || plan.config_sequence.back() != task.home_joints) {
      bad.push_back("config_sequence does not start and end at home");
    }
    const auto* analytic = dynamic_cast<const AnalyticArm*>(&arm);
    if (analytic && perm && bad.empty()) {
      for (std::size_t k = 0; k < n; ++k) {
        const int i = plan.target_sequence[k];
        const Cluster& cl = plan.clusters[static_cast<std::size_t>(owner[static_cast<std::size_t>(i)])];
        const ToolPose pose = analytic->forward(cl.base, plan.config_sequence[k + 1]);
        const Target& t = task.targets[static_cast<std::size_t>(i)];
        const Vec3 d = t.direction();
        const double err = std::hypot(pose.tip.x - t.x, pose.tip.y - t.y, pose.tip.z - t.z) +
                           std::hypot(pose.axis.x - d.x, pose.axis.y - d.y, pose.axis.z - d.z);
        if (err > 1e-9) bad.push_back("configuration for target " + std::to_string(i) + " misses it by " + std::to_string(err));
      }
    }
  }
  return bad;
}

Plan without_timings(Plan plan) {
  plan.stats.timings.clear();
  plan.stats.total_seconds = 0.0;
  return plan;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace mobiplan::testing
