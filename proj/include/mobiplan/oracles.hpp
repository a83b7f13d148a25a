#pragma once

// Brute-force reference answers for tests. Nothing here calls the planner's
// own geometry, solvers or search code.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "mobiplan/core.hpp"

namespace mobiplan::oracle {

inline constexpr std::size_t kMaxScpSets = 24;
inline constexpr std::size_t kMaxTourNodes = 9;  // home included
inline constexpr std::size_t kMaxPaths = 10000;

/// Moves the target into the frame of a robot standing on `floor_point`
/// facing the target azimuth, then tests the planes and the shell directly.
bool membership(const GeometricRegion& region, const Target& target, Vec2 floor_point);

struct ScpOptimum {
  std::size_t size = 0;
  std::vector<int> chosen;  // first optimal subset in lexicographic order
};

/// Smallest cover by enumerating subsets of growing cardinality. Refuses
/// (InvalidInput) above kMaxScpSets sets or 64 elements; throws
/// InfeasibleTask when no cover exists.
ScpOptimum scp(const ScpInstance& inst);

/// Shortest closed tour home -> every node -> home over all permutations.
/// Refuses above kMaxTourNodes points in total.
double tsp(const std::array<double, 4>& home, std::span<const std::array<double, 4>> nodes);

/// Cheapest joint-space path picking one configuration per layer, by
/// enumerating every combination. Refuses above kMaxPaths combinations.
double path(const std::vector<std::vector<JointVector>>& layers);

}  // namespace mobiplan::oracle
