#include "mobiplan/io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

namespace mobiplan {

using nlohmann::json;

namespace {

// Walks a JSON object, remembering its location for error messages and
// rejecting keys the schema does not know.
class Node {
 public:
  Node(const json& j, std::string where, std::string file) : j_(j), where_(std::move(where)), file_(std::move(file)) {
    if (!j_.is_object()) fail("expected an object");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidInput(file_ + ": " + (where_.empty() ? "/" : where_) + ": " + msg);
  }
  [[noreturn]] void fail_at(const std::string& key, const std::string& msg) const {
    throw InvalidInput(file_ + ": " + where_ + "/" + key + ": " + msg);
  }

  void allow(std::initializer_list<const char*> keys) const {
    const std::set<std::string> known(keys.begin(), keys.end());
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!known.count(it.key())) fail_at(it.key(), "unknown key");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }

  const json& raw(const char* key) const {
    if (!j_.contains(key)) fail_at(key, "missing required key");
    return j_.at(key);
  }

  Node child(const char* key) const { return Node(raw(key), where_ + "/" + key, file_); }

  double number(const char* key) const {
    const json& v = raw(key);
    if (!v.is_number()) fail_at(key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail_at(key, "expected a finite number");
    return d;
  }
  double number(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

  long long integer(const char* key) const {
    const json& v = raw(key);
    if (!v.is_number_integer()) fail_at(key, "expected an integer");
    return v.get<long long>();
  }

  std::uint64_t unsigned_integer(const char* key) const {
    const json& v = raw(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      fail_at(key, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  bool boolean(const char* key) const {
    const json& v = raw(key);
    if (!v.is_boolean()) fail_at(key, "expected true or false");
    return v.get<bool>();
  }

  std::string string(const char* key) const {
    const json& v = raw(key);
    if (!v.is_string()) fail_at(key, "expected a string");
    return v.get<std::string>();
  }

  const json& array(const char* key, std::size_t expected_size = 0) const {
    const json& v = raw(key);
    if (!v.is_array()) fail_at(key, "expected an array");
    if (expected_size && v.size() != expected_size) {
      fail_at(key, "expected " + std::to_string(expected_size) + " entries, got " + std::to_string(v.size()));
    }
    return v;
  }

  std::vector<double> numbers(const char* key, std::size_t expected_size) const {
    std::vector<double> out;
    const json& v = array(key, expected_size);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!v[k].is_number() || !std::isfinite(v[k].get<double>())) {
        fail_at(std::string(key) + "/" + std::to_string(k), "expected a finite number");
      }
      out.push_back(v[k].get<double>());
    }
    return out;
  }

  std::vector<int> ints(const char* key) const {
    std::vector<int> out;
    const json& v = array(key);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!v[k].is_number_integer()) fail_at(std::string(key) + "/" + std::to_string(k), "expected an integer");
      out.push_back(v[k].get<int>());
    }
    return out;
  }

  const std::string& where() const { return where_; }
  const std::string& file() const { return file_; }

 private:
  const json& j_;
  std::string where_;
  std::string file_;
};

json parse_json(std::istream& in, const char* file) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string(file) + ": malformed JSON: " + e.what());
  }
}

RobotParams read_robot(const Node& r) {
  r.allow({"j1_lim", "j1_res", "z_j2", "l1", "l2", "l", "joint_limits", "polar_lo", "polar_hi", "n_sam"});
  RobotParams p;
  p.j1_lim = deg_to_rad(r.number("j1_lim", rad_to_deg(p.j1_lim)));
  p.j1_res = deg_to_rad(r.number("j1_res", rad_to_deg(p.j1_res)));
  p.z_j2 = r.number("z_j2", p.z_j2);
  p.l1 = r.number("l1", p.l1);
  p.l2 = r.number("l2", p.l2);
  p.l = r.number("l", p.l);
  if (r.has("joint_limits")) {
    const auto lims = r.numbers("joint_limits", kNumJoints);
    for (int k = 0; k < kNumJoints; ++k) p.joint_limits[static_cast<std::size_t>(k)] = deg_to_rad(lims[static_cast<std::size_t>(k)]);
  } else {
    p.joint_limits[0] = p.j1_lim;
  }
  p.polar_lo = deg_to_rad(r.number("polar_lo", rad_to_deg(p.polar_lo)));
  p.polar_hi = deg_to_rad(r.number("polar_hi", rad_to_deg(p.polar_hi)));
  if (r.has("n_sam")) p.n_sam = static_cast<int>(r.integer("n_sam"));
  p.validate();
  return p;
}

json write_robot(const RobotParams& p) {
  json lims = json::array();
  for (double v : p.joint_limits) lims.push_back(rad_to_deg(v));
  return {{"j1_lim", rad_to_deg(p.j1_lim)}, {"j1_res", rad_to_deg(p.j1_res)}, {"z_j2", p.z_j2},
          {"l1", p.l1}, {"l2", p.l2}, {"l", p.l}, {"joint_limits", lims},
          {"polar_lo", rad_to_deg(p.polar_lo)}, {"polar_hi", rad_to_deg(p.polar_hi)}, {"n_sam", p.n_sam}};
}

}  // namespace

void TaskFile::validate() const {
  if (targets.empty()) throw InvalidInput("task: at least one target is required");
  robot.validate();
  if (!(voxel_size > 0.0)) throw InvalidInput("task: voxel_size must be positive");
  if (!(cell_size > 0.0)) throw InvalidInput("task: cell_size must be positive");
  if (floor_extent && (floor_extent->nx <= 0 || floor_extent->ny <= 0)) {
    throw InvalidInput("task: floor extent needs nx, ny >= 1");
  }
  if (!(region.z_min < region.z_max)) throw InvalidInput("task: region needs z_min < z_max");
  if (region.explicit_region) region.explicit_region->validate();
  if (solver == Solver::kExact) throw InvalidInput("task: solver must be greedy, lpr or lrg");
  if (lrg_iters < 1) throw InvalidInput("task: lrg_iters must be >= 1");
  if (!(h_scale >= 1.0)) throw InvalidInput("task: h_scale must be >= 1");
}

TaskFile read_task(std::istream& in) {
  const json doc = parse_json(in, "task");
  const Node root(doc, "", "task");
  root.allow({"targets", "robot", "database", "floor", "region", "solver", "lrg_iters", "h_scale", "seed",
              "threads", "home"});
  TaskFile task;

  const json& targets = root.array("targets");
  if (targets.empty()) root.fail_at("targets", "at least one target is required");
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const Node t(targets[k], "/targets/" + std::to_string(k), "task");
    t.allow({"x", "y", "z", "theta", "phi"});
    try {
      task.targets.push_back(make_target(t.number("x"), t.number("y"), t.number("z"),
                                         deg_to_rad(t.number("theta")), deg_to_rad(t.number("phi"))));
    } catch (const InvalidInput& e) {
      t.fail(e.what());
    }
  }

  if (root.has("robot")) {
    const Node r = root.child("robot");
    try {
      task.robot = read_robot(r);
    } catch (const InvalidInput& e) {
      if (std::string(e.what()).rfind("task:", 0) == 0) throw;
      r.fail(e.what());
    }
  }

  if (root.has("database")) {
    const Node d = root.child("database");
    d.allow({"voxel_size", "cache"});
    task.voxel_size = d.number("voxel_size", task.voxel_size);
    if (d.has("cache")) task.cache_database = d.boolean("cache");
  }

  if (root.has("floor")) {
    const Node f = root.child("floor");
    f.allow({"cell_size", "origin", "nx", "ny"});
    task.cell_size = f.number("cell_size", task.cell_size);
    const bool any = f.has("origin") || f.has("nx") || f.has("ny");
    if (any) {
      const auto origin = f.numbers("origin", 2);
      FloorExtent e{{origin[0], origin[1]}, static_cast<int>(f.integer("nx")), static_cast<int>(f.integer("ny"))};
      if (e.nx <= 0 || e.ny <= 0) f.fail("nx and ny must be >= 1");
      task.floor_extent = e;
    }
  }

  {
    const Node g = root.child("region");
    g.allow({"x_min", "z_min", "z_max", "x_s", "z_s", "r_min", "r_max"});
    task.region.x_min = g.number("x_min");
    task.region.z_min = g.number("z_min");
    task.region.z_max = g.number("z_max");
    const int given = g.has("x_s") + g.has("z_s") + g.has("r_min") + g.has("r_max");
    if (given == 4) {
      GeometricRegion e{task.region.x_min, task.region.z_min, task.region.z_max, g.number("x_s"),
                        g.number("z_s"),     g.number("r_min"),  g.number("r_max")};
      try {
        e.validate();
      } catch (const InvalidInput& err) {
        g.fail(err.what());
      }
      task.region.explicit_region = e;
    } else if (given != 0) {
      g.fail("give all of x_s, z_s, r_min, r_max or none of them (fitted from the database)");
    }
  }

  if (root.has("solver")) {
    try {
      task.solver = parse_solver(root.string("solver"));
    } catch (const InvalidInput& e) {
      root.fail_at("solver", e.what());
    }
    if (task.solver == Solver::kExact) root.fail_at("solver", "expected greedy, lpr or lrg");
  }
  if (root.has("lrg_iters")) task.lrg_iters = static_cast<int>(root.integer("lrg_iters"));
  task.h_scale = root.number("h_scale", task.h_scale);
  if (root.has("seed")) task.seed = root.unsigned_integer("seed");
  if (root.has("threads")) task.threads = static_cast<unsigned>(root.unsigned_integer("threads"));

  if (root.has("home")) {
    const Node h = root.child("home");
    h.allow({"base", "joints"});
    if (h.has("base")) {
      const Node b = h.child("base");
      b.allow({"x", "y", "yaw"});
      task.home_base = BasePose{b.number("x"), b.number("y"), normalize_azimuth(deg_to_rad(b.number("yaw", 0.0)))};
    }
    if (h.has("joints")) {
      const auto q = h.numbers("joints", kNumJoints);
      for (int k = 0; k < kNumJoints; ++k) task.home_joints[static_cast<std::size_t>(k)] = deg_to_rad(q[static_cast<std::size_t>(k)]);
    }
  }

  task.validate();
  return task;
}

TaskFile read_task_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open task file " + path);
  try {
    return read_task(in);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void write_task(std::ostream& out, const TaskFile& task) {
  json targets = json::array();
  for (const Target& t : task.targets) {
    targets.push_back({{"x", t.x}, {"y", t.y}, {"z", t.z}, {"theta", rad_to_deg(t.theta)}, {"phi", rad_to_deg(t.phi)}});
  }
  json region = {{"x_min", task.region.x_min}, {"z_min", task.region.z_min}, {"z_max", task.region.z_max}};
  if (const auto& e = task.region.explicit_region) {
    region["x_s"] = e->x_s;
    region["z_s"] = e->z_s;
    region["r_min"] = e->r_min;
    region["r_max"] = e->r_max;
  }
  json floor = {{"cell_size", task.cell_size}};
  if (const auto& e = task.floor_extent) {
    floor["origin"] = {e->origin.x, e->origin.y};
    floor["nx"] = e->nx;
    floor["ny"] = e->ny;
  }
  json doc = {{"targets", targets},
              {"robot", write_robot(task.robot)},
              {"database", {{"voxel_size", task.voxel_size}, {"cache", task.cache_database}}},
              {"floor", floor},
              {"region", region},
              {"solver", solver_name(task.solver)},
              {"lrg_iters", task.lrg_iters},
              {"h_scale", task.h_scale},
              {"seed", task.seed},
              {"threads", task.threads}};
  json home = json::object();
  if (task.home_base) {
    home["base"] = {{"x", task.home_base->x}, {"y", task.home_base->y}, {"yaw", rad_to_deg(task.home_base->yaw)}};
  }
  json joints = json::array();
  for (double q : task.home_joints) joints.push_back(rad_to_deg(q));
  home["joints"] = joints;
  doc["home"] = home;
  out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Plan files

namespace {

json pose_json(const BasePose& b) { return {{"x", b.x}, {"y", b.y}, {"yaw_rad", b.yaw}}; }

BasePose read_pose(const Node& n) {
  n.allow({"x", "y", "yaw_rad"});
  return {n.number("x"), n.number("y"), n.number("yaw_rad")};
}

}  // namespace

void write_plan(std::ostream& out, const Plan& plan) {
  json clusters = json::array();
  for (const Cluster& c : plan.clusters) {
    clusters.push_back({{"targets", c.target_indices}, {"floor_index", c.floor_index}, {"base", pose_json(c.base)}});
  }
  json configs = json::array();
  for (const JointVector& q : plan.config_sequence) configs.push_back(q);
  json timings = json::array();
  for (const StageTiming& t : plan.stats.timings) timings.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
  const PlanStats& s = plan.stats;
  json doc = {{"format", "mobiplan-plan 1"},
              {"home_base", pose_json(plan.home_base)},
              {"clusters", clusters},
              {"base_sequence", plan.base_sequence},
              {"target_sequence", plan.target_sequence},
              {"config_sequence_rad", configs},
              {"stats",
               {{"solver", s.solver},
                {"cover_size", s.cover_size},
                {"cluster_count", s.cluster_count},
                {"base_tour_length", s.base_tour_length},
                {"target_tour_length", s.target_tour_length},
                {"config_path_length", s.config_path_length},
                {"timings", timings},
                {"total_seconds", s.total_seconds}}}};
  out << doc.dump(2) << '\n';
}

Plan read_plan(std::istream& in) {
  const json doc = parse_json(in, "plan");
  const Node root(doc, "", "plan");
  root.allow({"format", "home_base", "clusters", "base_sequence", "target_sequence", "config_sequence_rad", "stats"});
  if (root.string("format") != "mobiplan-plan 1") root.fail_at("format", "unsupported plan format");
  Plan plan;
  plan.home_base = read_pose(root.child("home_base"));
  const json& clusters = root.array("clusters");
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    const Node c(clusters[k], "/clusters/" + std::to_string(k), "plan");
    c.allow({"targets", "floor_index", "base"});
    Cluster cl;
    cl.target_indices = c.ints("targets");
    cl.floor_index = static_cast<int>(c.integer("floor_index"));
    cl.base = read_pose(c.child("base"));
    plan.clusters.push_back(std::move(cl));
  }
  plan.base_sequence = root.ints("base_sequence");
  plan.target_sequence = root.ints("target_sequence");
  const json& configs = root.array("config_sequence_rad");
  for (std::size_t k = 0; k < configs.size(); ++k) {
    const std::string where = "/config_sequence_rad/" + std::to_string(k);
    if (!configs[k].is_array() || configs[k].size() != kNumJoints) {
      throw InvalidInput("plan: " + where + ": expected 6 joint values");
    }
    JointVector q{};
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (!configs[k][j].is_number()) throw InvalidInput("plan: " + where + ": expected numbers");
      q[j] = configs[k][j].get<double>();
    }
    plan.config_sequence.push_back(q);
  }
  const Node s = root.child("stats");
  s.allow({"solver", "cover_size", "cluster_count", "base_tour_length", "target_tour_length", "config_path_length",
           "timings", "total_seconds"});
  plan.stats.solver = s.string("solver");
  plan.stats.cover_size = static_cast<int>(s.integer("cover_size"));
  plan.stats.cluster_count = static_cast<int>(s.integer("cluster_count"));
  plan.stats.base_tour_length = s.number("base_tour_length");
  plan.stats.target_tour_length = s.number("target_tour_length");
  plan.stats.config_path_length = s.number("config_path_length");
  plan.stats.total_seconds = s.number("total_seconds");
  const json& timings = s.array("timings");
  for (std::size_t k = 0; k < timings.size(); ++k) {
    const Node t(timings[k], "/stats/timings/" + std::to_string(k), "plan");
    t.allow({"stage", "seconds"});
    plan.stats.timings.push_back({t.string("stage"), t.number("seconds")});
  }
  return plan;
}

Plan read_plan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open plan file " + path);
  return read_plan(in);
}

}  // namespace mobiplan
