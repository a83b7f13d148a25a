#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mobiplan/core.hpp"
#include "mobiplan/kinematics.hpp"

namespace mobiplan {

using Point4 = std::array<double, 4>;

double distance(const Point4& a, const Point4& b);

/// Closed tour through `nodes` that starts and ends at `home`.
struct TourProblem {
  Point4 home{};
  std::vector<Point4> nodes;
};

/// Length of home -> nodes[order...] -> home.
double tour_length(const TourProblem& problem, std::span<const int> order);

/// Nearest unvisited node from home onward; lowest index on ties.
std::vector<int> nearest_neighbour_tour(const TourProblem& problem);

/// Nearest-neighbour start improved by first-improvement 2-opt until no
/// exchange shortens the tour. Home stays fixed at both ends, so the result
/// lists node indices only. `restarts` > 0 adds seeded random starts and
/// keeps the shortest result.
std::vector<int> solve_tsp_2opt(const TourProblem& problem, std::uint64_t seed = 0,
                                int restarts = 0);

/// No 2-exchange shortens the tour by more than `tol`.
bool is_two_optimal(const TourProblem& problem, std::span<const int> order, double tol = 1e-9);

/// Targets lifted to 4D so clusters sit apart along the 4th axis in base
/// order. Node k of `problem` is target k.
struct SeparatedTargets {
  TourProblem problem;
  double h = 0.0;               // separation distance
  std::vector<int> cluster_of;  // cluster index per target
  std::vector<int> rank_of;     // position of the target's cluster in base order
};

/// h = h_scale * the largest cluster diameter (1 m when every cluster is a
/// single point); target w = rank * h * sqrt(2).
SeparatedTargets virtual_separation(std::span<const Target> targets,
                                    std::span<const Cluster> clusters,
                                    std::span<const int> base_order, double h_scale,
                                    Vec3 home_tip);

/// Tour over the lifted targets, then cluster blocks forced into base order
/// (intra-cluster order kept). Returns a permutation of target indices.
std::vector<int> solve_target_sequence(std::span<const Target> targets,
                                       std::span<const Cluster> clusters,
                                       std::span<const int> base_order, double h_scale,
                                       std::uint64_t seed, Vec3 home_tip);

/// Joint-space Euclidean distance (rad).
double config_distance(const JointVector& a, const JointVector& b);

/// Layer 0 and the last layer hold the home configuration; layer k holds the
/// IK solutions for the k-th sequenced target.
struct ConfigGraph {
  std::vector<std::vector<JointVector>> layers;
  std::vector<int> layer_target;  // target index per layer, kHome at both ends
};

ConfigGraph build_config_graph(const ArmModel& arm, std::span<const Target> targets,
                               std::span<const Cluster> clusters,
                               std::span<const int> target_sequence, const JointVector& home);

struct ConfigPath {
  std::vector<int> nodes;  // chosen node per layer
  double cost = 0.0;
};

/// Exact shortest path through the layered graph by dynamic programming.
/// Throws ContractViolation naming the target of the first empty layer.
ConfigPath solve_config_sequence(const ConfigGraph& graph);

}  // namespace mobiplan
