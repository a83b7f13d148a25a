#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mobiplan/core.hpp"

namespace mobiplan {

// ---------------------------------------------------------------------------
// Bigraph construction

/// Grid indices of the floor points from which a base, turned so the
/// geometric region faces the target azimuth, holds the target inside the
/// region. Closed form: a half-plane and an annulus on the floor.
std::vector<int> reachable_floor_points(const Target& target, const FloorGrid& grid,
                                        const GeometricRegion& region);

/// One reachable_floor_points pass per target, transposed into one set per
/// floor point. Per-target work fans out over `threads` (0 = hardware).
ScpInstance build_bigraph(std::span<const Target> targets, std::shared_ptr<const FloorGrid> grid,
                          const GeometricRegion& region, unsigned threads = 0);

// ---------------------------------------------------------------------------
// Solvers

enum class Solver { kGreedy, kLpr, kLrg, kExact };

std::string solver_name(Solver solver);
/// Accepts "greedy", "lpr", "lrg", "exact"; throws InvalidInput otherwise.
Solver parse_solver(const std::string& name);

struct CoverSolution {
  std::vector<int> chosen;   // floor-point (set) indices, ascending
  std::vector<int> covered;  // covered[i] = chosen set that serves target i
  Solver solver = Solver::kGreedy;
  double lp_objective = 0.0;  // LPr only
  int max_frequency = 0;      // LPr only: most sets containing one element
};

/// True iff the union of `chosen` sets is the universe.
bool is_cover(const ScpInstance& inst, std::span<const int> chosen);

/// Repeatedly takes the set with the most uncovered elements (lowest index
/// on ties). Throws InfeasibleTask when some element is in no set.
CoverSolution solve_greedy(const ScpInstance& inst);

struct LpSolution {
  std::vector<double> x;  // one value per set
  double objective = 0.0;
  int iterations = 0;
};

/// min sum x_j  s.t. every element covered >= 1, 0 <= x <= 1. Solved as its
/// packing dual with a dense tableau simplex under Bland's rule; x is read
/// from the final dual prices. `iteration_cap` 0 means 50 (n + m).
LpSolution solve_cover_lp(const ScpInstance& inst, int iteration_cap = 0);

/// LP relaxation, keep every set with x_j >= 1/f, then drop redundant sets.
CoverSolution solve_lpr(const ScpInstance& inst, int iteration_cap = 0);

/// Lagrangian relaxation with multiplier-weighted greedy; best of `iters`
/// rounds, plain greedy included as the first candidate.
CoverSolution solve_lrg(const ScpInstance& inst, int iters = 20, std::uint64_t seed = 0);

inline constexpr std::size_t kExactMaxSets = 24;

/// Branch and bound; refuses (InvalidInput) above kExactMaxSets sets.
CoverSolution solve_exact(const ScpInstance& inst);

struct SolverOptions {
  int lrg_iters = 20;
  std::uint64_t seed = 0;
  int lp_iteration_cap = 0;
};

CoverSolution solve_cover(const ScpInstance& inst, Solver solver, const SolverOptions& opts = {});

/// Drops chosen sets whose elements are all covered by the other chosen
/// sets, smallest sets first (index on ties).
std::vector<int> prune_redundant(const ScpInstance& inst, std::vector<int> chosen);

/// Serves each target from the chosen set whose floor point is nearest in
/// xy (lowest index on ties) and drops chosen sets left serving nobody.
/// Without floor geometry the lowest-index containing set wins.
void assign_nearest(CoverSolution& solution, const ScpInstance& inst,
                    std::span<const Target> targets);

// ---------------------------------------------------------------------------
// Plain-text exchange format:
//   line 1: "<n> <m>"
//   then m lines: "<set index> <member> <member> ..."

void write_scp_exchange(std::ostream& out, const ScpInstance& inst);
ScpInstance read_scp_exchange(std::istream& in);

}  // namespace mobiplan
