#include "mobiplan/sequencing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace mobiplan {

double distance(const Point4& a, const Point4& b) {
  const double d0 = a[0] - b[0], d1 = a[1] - b[1], d2 = a[2] - b[2], d3 = a[3] - b[3];
  return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2 + d3 * d3);
}

namespace {

// Closed walk with home stored as index `home` at both ends.
struct Walk {
  const TourProblem& problem;
  int home;

  const Point4& at(int k) const {
    return k == home ? problem.home : problem.nodes[static_cast<std::size_t>(k)];
  }
  double d(int a, int b) const { return distance(at(a), at(b)); }
};

std::vector<int> with_home(std::span<const int> order, int home) {
  std::vector<int> t;
  t.reserve(order.size() + 2);
  t.push_back(home);
  t.insert(t.end(), order.begin(), order.end());
  t.push_back(home);
  return t;
}

void two_opt(const Walk& walk, std::vector<int>& t) {
  const std::size_t len = t.size();
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 3 < len && !improved; ++i) {
      for (std::size_t j = i + 2; j + 1 < len; ++j) {
        const double delta = walk.d(t[i], t[j]) + walk.d(t[i + 1], t[j + 1]) -
                             walk.d(t[i], t[i + 1]) - walk.d(t[j], t[j + 1]);
        if (delta < -1e-12) {
          std::reverse(t.begin() + static_cast<std::ptrdiff_t>(i + 1),
                       t.begin() + static_cast<std::ptrdiff_t>(j + 1));
          improved = true;
          break;
        }
      }
    }
  }
}

}  // namespace

double tour_length(const TourProblem& problem, std::span<const int> order) {
  const Walk walk{problem, static_cast<int>(problem.nodes.size())};
  const auto t = with_home(order, walk.home);
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) sum += walk.d(t[k], t[k + 1]);
  return sum;
}

std::vector<int> nearest_neighbour_tour(const TourProblem& problem) {
  const std::size_t n = problem.nodes.size();
  std::vector<char> seen(n, 0);
  std::vector<int> order;
  order.reserve(n);
  Point4 here = problem.home;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      if (seen[k]) continue;
      const double d = distance(here, problem.nodes[k]);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    seen[best] = 1;
    order.push_back(static_cast<int>(best));
    here = problem.nodes[best];
  }
  return order;
}

std::vector<int> solve_tsp_2opt(const TourProblem& problem, std::uint64_t seed, int restarts) {
  if (problem.nodes.empty()) throw InvalidInput("tsp: no nodes besides home");
  const Walk walk{problem, static_cast<int>(problem.nodes.size())};
  auto t = with_home(nearest_neighbour_tour(problem), walk.home);
  two_opt(walk, t);
  std::vector<int> best(t.begin() + 1, t.end() - 1);
  double best_len = tour_length(problem, best);

  std::mt19937_64 rng(seed);
  for (int r = 0; r < restarts; ++r) {
    std::vector<int> order(problem.nodes.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    auto tr = with_home(order, walk.home);
    two_opt(walk, tr);
    std::vector<int> cand(tr.begin() + 1, tr.end() - 1);
    const double len = tour_length(problem, cand);
    if (len < best_len - 1e-12) {
      best = std::move(cand);
      best_len = len;
    }
  }
  return best;
}

bool is_two_optimal(const TourProblem& problem, std::span<const int> order, double tol) {
  const Walk walk{problem, static_cast<int>(problem.nodes.size())};
  const auto t = with_home(order, walk.home);
  for (std::size_t i = 0; i + 3 < t.size(); ++i) {
    for (std::size_t j = i + 2; j + 1 < t.size(); ++j) {
      const double delta = walk.d(t[i], t[j]) + walk.d(t[i + 1], t[j + 1]) -
                           walk.d(t[i], t[i + 1]) - walk.d(t[j], t[j + 1]);
      if (delta < -tol) return false;
    }
  }
  return true;
}

SeparatedTargets virtual_separation(std::span<const Target> targets,
                                    std::span<const Cluster> clusters,
                                    std::span<const int> base_order, double h_scale,
                                    Vec3 home_tip) {
  if (!(h_scale >= 1.0)) throw InvalidInput("h_scale must be >= 1");
  if (base_order.size() != clusters.size()) {
    throw InvalidInput("virtual_separation: base order must list every cluster once");
  }
  SeparatedTargets out;
  out.cluster_of.assign(targets.size(), -1);
  out.rank_of.assign(targets.size(), -1);
  std::vector<int> rank(clusters.size(), -1);
  for (std::size_t r = 0; r < base_order.size(); ++r) {
    const int c = base_order[r];
    if (c < 0 || static_cast<std::size_t>(c) >= clusters.size() || rank[static_cast<std::size_t>(c)] >= 0) {
      throw InvalidInput("virtual_separation: base order is not a permutation of clusters");
    }
    rank[static_cast<std::size_t>(c)] = static_cast<int>(r);
  }

  double diameter = 0.0;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const auto& members = clusters[c].target_indices;
    for (std::size_t a = 0; a < members.size(); ++a) {
      const Target& ta = targets[static_cast<std::size_t>(members[a])];
      out.cluster_of[static_cast<std::size_t>(members[a])] = static_cast<int>(c);
      out.rank_of[static_cast<std::size_t>(members[a])] = rank[c];
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const Target& tb = targets[static_cast<std::size_t>(members[b])];
        diameter = std::max(diameter, std::hypot(ta.x - tb.x, ta.y - tb.y, ta.z - tb.z));
      }
    }
  }
  if (std::find(out.cluster_of.begin(), out.cluster_of.end(), -1) != out.cluster_of.end()) {
    throw InvalidInput("virtual_separation: some target belongs to no cluster");
  }
  out.h = diameter > 0.0 ? h_scale * diameter : 1.0;

  const double step = out.h * std::sqrt(2.0);
  out.problem.home = {home_tip.x, home_tip.y, home_tip.z, 0.0};
  out.problem.nodes.reserve(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    out.problem.nodes.push_back({targets[i].x, targets[i].y, targets[i].z, out.rank_of[i] * step});
  }
  return out;
}

std::vector<int> solve_target_sequence(std::span<const Target> targets,
                                       std::span<const Cluster> clusters,
                                       std::span<const int> base_order, double h_scale,
                                       std::uint64_t seed, Vec3 home_tip) {
  const SeparatedTargets lifted = virtual_separation(targets, clusters, base_order, h_scale, home_tip);
  std::vector<int> tour = solve_tsp_2opt(lifted.problem, seed);
  auto rank = [&](int t) { return lifted.rank_of[static_cast<std::size_t>(t)]; };
  if (rank(tour.front()) > rank(tour.back())) std::reverse(tour.begin(), tour.end());
  std::stable_sort(tour.begin(), tour.end(), [&](int a, int b) { return rank(a) < rank(b); });
  return tour;
}

double config_distance(const JointVector& a, const JointVector& b) {
  double sum = 0.0;
  for (int k = 0; k < kNumJoints; ++k) {
    const double d = a[static_cast<std::size_t>(k)] - b[static_cast<std::size_t>(k)];
    sum += d * d;
  }
  return std::sqrt(sum);
}

ConfigGraph build_config_graph(const ArmModel& arm, std::span<const Target> targets,
                               std::span<const Cluster> clusters,
                               std::span<const int> target_sequence, const JointVector& home) {
  std::vector<int> owner(targets.size(), -1);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (int i : clusters[c].target_indices) owner[static_cast<std::size_t>(i)] = static_cast<int>(c);
  }
  ConfigGraph g;
  g.layers.reserve(target_sequence.size() + 2);
  g.layers.push_back({home});
  g.layer_target.push_back(kHome);
  for (int t : target_sequence) {
    const int c = owner[static_cast<std::size_t>(t)];
    if (c < 0) throw InvalidInput("build_config_graph: target " + std::to_string(t) + " has no cluster");
    g.layers.push_back(arm.solve_ik(clusters[static_cast<std::size_t>(c)].base,
                                    targets[static_cast<std::size_t>(t)], false));
    g.layer_target.push_back(t);
  }
  g.layers.push_back({home});
  g.layer_target.push_back(kHome);
  return g;
}

ConfigPath solve_config_sequence(const ConfigGraph& graph) {
  const std::size_t L = graph.layers.size();
  if (L == 0) return {};
  for (std::size_t k = 0; k < L; ++k) {
    if (graph.layers[k].empty()) {
      const int t = k < graph.layer_target.size() ? graph.layer_target[k] : -1;
      throw ContractViolation("no IK solution for sequenced target " + std::to_string(t) +
                              " (layer " + std::to_string(k) + ") at its cluster base pose");
    }
  }
  std::vector<std::vector<double>> cost(L);
  std::vector<std::vector<int>> from(L);
  cost[0].assign(graph.layers[0].size(), 0.0);
  from[0].assign(graph.layers[0].size(), -1);
  for (std::size_t k = 1; k < L; ++k) {
    const auto& prev = graph.layers[k - 1];
    const auto& cur = graph.layers[k];
    cost[k].assign(cur.size(), std::numeric_limits<double>::infinity());
    from[k].assign(cur.size(), -1);
    for (std::size_t b = 0; b < cur.size(); ++b) {
      for (std::size_t a = 0; a < prev.size(); ++a) {
        const double c = cost[k - 1][a] + config_distance(prev[a], cur[b]);
        if (c < cost[k][b]) {
          cost[k][b] = c;
          from[k][b] = static_cast<int>(a);
        }
      }
    }
  }
  ConfigPath path;
  path.nodes.assign(L, 0);
  std::size_t end = 0;
  for (std::size_t b = 1; b < cost[L - 1].size(); ++b) {
    if (cost[L - 1][b] < cost[L - 1][end]) end = b;
  }
  path.cost = cost[L - 1][end];
  int node = static_cast<int>(end);
  for (std::size_t k = L; k-- > 0;) {
    path.nodes[k] = node;
    node = from[k][static_cast<std::size_t>(node)];
  }
  return path;
}

}  // namespace mobiplan
