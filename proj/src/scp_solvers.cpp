#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "mobiplan/scp.hpp"

namespace mobiplan {

namespace {

void require_feasible(const ScpInstance& inst) {
  for (const auto& set : inst.sets) {
    for (int i : set) {
      if (i < 0 || i >= inst.n) throw InvalidInput("scp: set member out of range");
    }
  }
  const FeasibilityReport report = check_feasibility(inst);
  if (report.feasible) return;
  std::ostringstream msg;
  msg << report.uncovered.size() << " target(s) have no reachable floor point:";
  for (std::size_t k = 0; k < report.uncovered.size() && k < 20; ++k) {
    msg << ' ' << report.uncovered[k];
  }
  if (report.uncovered.size() > 20) msg << " ...";
  throw InfeasibleTask(msg.str(), report.uncovered);
}

// covered[i] = first chosen set (in ascending order) containing i.
std::vector<int> first_cover(const ScpInstance& inst, const std::vector<int>& chosen) {
  std::vector<int> covered(static_cast<std::size_t>(inst.n), -1);
  for (int j : chosen) {
    for (int i : inst.sets[static_cast<std::size_t>(j)]) {
      auto& slot = covered[static_cast<std::size_t>(i)];
      if (slot < 0) slot = j;
    }
  }
  return covered;
}

CoverSolution finish(const ScpInstance& inst, std::vector<int> chosen, Solver solver) {
  std::sort(chosen.begin(), chosen.end());
  if (!is_cover(inst, chosen)) {
    throw ContractViolation("scp solver " + solver_name(solver) + " returned a non-cover");
  }
  CoverSolution sol;
  sol.covered = first_cover(inst, chosen);
  sol.chosen = std::move(chosen);
  sol.solver = solver;
  return sol;
}

// Greedy driven by an element weight; `pick` chooses among tied sets.
template <typename Pick>
std::vector<int> weighted_greedy(const ScpInstance& inst, const std::vector<double>& weight,
                                 Pick&& pick) {
  std::vector<char> done(static_cast<std::size_t>(inst.n), 0);
  std::vector<char> used(inst.m(), 0);
  int remaining = inst.n;
  std::vector<int> chosen;
  std::vector<int> ties;
  while (remaining > 0) {
    double best = 0.0;
    int best_count = 0;
    ties.clear();
    for (std::size_t j = 0; j < inst.m(); ++j) {
      if (used[j]) continue;
      double score = 0.0;
      int count = 0;
      for (int i : inst.sets[j]) {
        if (!done[static_cast<std::size_t>(i)]) {
          score += weight[static_cast<std::size_t>(i)];
          ++count;
        }
      }
      if (count == 0) continue;
      // Uncovered count breaks weight ties, then `pick`.
      const double tol = 1e-12 * std::max(1.0, std::abs(best));
      if (ties.empty() || score > best + tol || (score >= best - tol && count > best_count)) {
        best = score;
        best_count = count;
        ties.assign(1, static_cast<int>(j));
      } else if (score >= best - tol && count == best_count) {
        ties.push_back(static_cast<int>(j));
      }
    }
    const int j = pick(ties);
    used[static_cast<std::size_t>(j)] = 1;
    chosen.push_back(j);
    for (int i : inst.sets[static_cast<std::size_t>(j)]) {
      if (!done[static_cast<std::size_t>(i)]) {
        done[static_cast<std::size_t>(i)] = 1;
        --remaining;
      }
    }
  }
  return chosen;
}

}  // namespace

std::string solver_name(Solver solver) {
  switch (solver) {
    case Solver::kGreedy: return "greedy";
    case Solver::kLpr: return "lpr";
    case Solver::kLrg: return "lrg";
    case Solver::kExact: return "exact";
  }
  return "unknown";
}

Solver parse_solver(const std::string& name) {
  if (name == "greedy") return Solver::kGreedy;
  if (name == "lpr") return Solver::kLpr;
  if (name == "lrg") return Solver::kLrg;
  if (name == "exact") return Solver::kExact;
  throw InvalidInput("unknown solver '" + name + "' (expected greedy, lpr, lrg or exact)");
}

bool is_cover(const ScpInstance& inst, std::span<const int> chosen) {
  std::vector<char> hit(static_cast<std::size_t>(inst.n), 0);
  for (int j : chosen) {
    for (int i : inst.sets[static_cast<std::size_t>(j)]) hit[static_cast<std::size_t>(i)] = 1;
  }
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

std::vector<int> prune_redundant(const ScpInstance& inst, std::vector<int> chosen) {
  std::vector<int> mult(static_cast<std::size_t>(inst.n), 0);
  for (int j : chosen) {
    for (int i : inst.sets[static_cast<std::size_t>(j)]) ++mult[static_cast<std::size_t>(i)];
  }
  std::vector<int> order = chosen;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto sa = inst.sets[static_cast<std::size_t>(a)].size();
    const auto sb = inst.sets[static_cast<std::size_t>(b)].size();
    return sa != sb ? sa < sb : a < b;
  });
  std::vector<char> drop(inst.m(), 0);
  for (int j : order) {
    const auto& set = inst.sets[static_cast<std::size_t>(j)];
    const bool redundant =
        std::all_of(set.begin(), set.end(), [&](int i) { return mult[static_cast<std::size_t>(i)] > 1; });
    if (!redundant) continue;
    drop[static_cast<std::size_t>(j)] = 1;
    for (int i : set) --mult[static_cast<std::size_t>(i)];
  }
  std::erase_if(chosen, [&](int j) { return drop[static_cast<std::size_t>(j)] != 0; });
  return chosen;
}

CoverSolution solve_greedy(const ScpInstance& inst) {
  require_feasible(inst);
  const std::vector<double> unit(static_cast<std::size_t>(inst.n), 1.0);
  auto chosen = weighted_greedy(inst, unit, [](const std::vector<int>& ties) { return ties.front(); });
  return finish(inst, std::move(chosen), Solver::kGreedy);
}

CoverSolution solve_lpr(const ScpInstance& inst, int iteration_cap) {
  require_feasible(inst);
  const LpSolution lp = solve_cover_lp(inst, iteration_cap);
  std::vector<int> freq(static_cast<std::size_t>(inst.n), 0);
  for (const auto& set : inst.sets) {
    for (int i : set) ++freq[static_cast<std::size_t>(i)];
  }
  const int f = *std::max_element(freq.begin(), freq.end());
  const double threshold = 1.0 / f - 1e-9;
  std::vector<int> chosen;
  for (std::size_t j = 0; j < inst.m(); ++j) {
    if (lp.x[j] >= threshold) chosen.push_back(static_cast<int>(j));
  }
  if (!is_cover(inst, chosen)) {
    throw ContractViolation("lpr: rounded LP solution does not cover the universe");
  }
  CoverSolution sol = finish(inst, prune_redundant(inst, std::move(chosen)), Solver::kLpr);
  sol.lp_objective = lp.objective;
  sol.max_frequency = f;
  return sol;
}

CoverSolution solve_lrg(const ScpInstance& inst, int iters, std::uint64_t seed) {
  if (iters < 1) throw InvalidInput("lrg: iters must be >= 1");
  require_feasible(inst);
  const std::size_t n = static_cast<std::size_t>(inst.n);

  std::vector<int> best = prune_redundant(inst, solve_greedy(inst).chosen);

  std::vector<std::vector<int>> containing(n);
  for (std::size_t j = 0; j < inst.m(); ++j) {
    for (int i : inst.sets[j]) containing[static_cast<std::size_t>(i)].push_back(static_cast<int>(j));
  }
  std::vector<double> u(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t largest = 0;
    for (int j : containing[i]) largest = std::max(largest, inst.sets[static_cast<std::size_t>(j)].size());
    u[i] = 1.0 / static_cast<double>(largest);  // min over covering sets of 1/|s_j|
  }

  std::mt19937_64 rng(seed);
  std::vector<double> g(n);
  for (int k = 0; k < iters; ++k) {
    auto candidate = weighted_greedy(inst, u, [&](const std::vector<int>& ties) {
      if (ties.size() == 1) return ties.front();
      std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
      return ties[pick(rng)];
    });
    candidate = prune_redundant(inst, std::move(candidate));
    if (candidate.size() < best.size()) best = std::move(candidate);

    // Lagrangian bound and subgradient at u.
    double bound = 0.0;
    for (double ui : u) bound += ui;
    std::fill(g.begin(), g.end(), 1.0);
    for (std::size_t j = 0; j < inst.m(); ++j) {
      double reduced = 1.0;
      for (int i : inst.sets[j]) reduced -= u[static_cast<std::size_t>(i)];
      if (reduced < 0.0) {
        bound += reduced;
        for (int i : inst.sets[j]) g[static_cast<std::size_t>(i)] -= 1.0;
      }
    }
    const double upper = static_cast<double>(best.size());
    if (std::ceil(bound - 1e-9) >= upper) break;  // best is provably optimal
    double norm2 = 0.0;
    for (double gi : g) norm2 += gi * gi;
    if (norm2 == 0.0) break;
    const double step = (upper - bound) / norm2 / (1.0 + k);
    for (std::size_t i = 0; i < n; ++i) u[i] = std::max(0.0, u[i] + step * g[i]);
  }
  return finish(inst, std::move(best), Solver::kLrg);
}

CoverSolution solve_exact(const ScpInstance& inst) {
  if (inst.m() > kExactMaxSets) {
    throw InvalidInput("exact solver refuses instances with more than " +
                       std::to_string(kExactMaxSets) + " sets");
  }
  require_feasible(inst);
  const std::size_t n = static_cast<std::size_t>(inst.n);
  std::vector<int> best = solve_greedy(inst).chosen;
  std::vector<std::vector<int>> containing(n);
  for (std::size_t j = 0; j < inst.m(); ++j) {
    for (int i : inst.sets[j]) containing[static_cast<std::size_t>(i)].push_back(static_cast<int>(j));
  }

  std::vector<int> cover_count(n, 0);
  std::vector<int> chosen;
  int uncovered = inst.n;

  auto apply = [&](int j, int delta) {
    for (int i : inst.sets[static_cast<std::size_t>(j)]) {
      auto& c = cover_count[static_cast<std::size_t>(i)];
      if (delta > 0 && c == 0) --uncovered;
      c += delta;
      if (delta < 0 && c == 0) ++uncovered;
    }
  };

  auto search = [&](auto&& self) -> void {
    if (uncovered == 0) {
      if (chosen.size() < best.size()) best = chosen;
      return;
    }
    int widest = 0;
    for (std::size_t j = 0; j < inst.m(); ++j) {
      int fresh = 0;
      for (int i : inst.sets[j]) fresh += cover_count[static_cast<std::size_t>(i)] == 0;
      widest = std::max(widest, fresh);
    }
    const std::size_t bound = chosen.size() + static_cast<std::size_t>((uncovered + widest - 1) / widest);
    if (bound >= best.size()) return;
    // Branch on the uncovered element with the fewest covering sets.
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (cover_count[i] == 0 && (pivot == n || containing[i].size() < containing[pivot].size())) pivot = i;
    }
    for (int j : containing[pivot]) {
      chosen.push_back(j);
      apply(j, +1);
      self(self);
      apply(j, -1);
      chosen.pop_back();
    }
  };
  search(search);
  return finish(inst, std::move(best), Solver::kExact);
}

CoverSolution solve_cover(const ScpInstance& inst, Solver solver, const SolverOptions& opts) {
  switch (solver) {
    case Solver::kGreedy: return solve_greedy(inst);
    case Solver::kLpr: return solve_lpr(inst, opts.lp_iteration_cap);
    case Solver::kLrg: return solve_lrg(inst, opts.lrg_iters, opts.seed);
    case Solver::kExact: return solve_exact(inst);
  }
  throw InvalidInput("unknown solver");
}

void assign_nearest(CoverSolution& sol, const ScpInstance& inst, std::span<const Target> targets) {
  if (targets.size() != static_cast<std::size_t>(inst.n)) {
    throw InvalidInput("assign_nearest: target count differs from universe size");
  }
  std::vector<int> covered(targets.size(), -1);
  std::vector<double> best_d2(targets.size(), std::numeric_limits<double>::infinity());
  for (int j : sol.chosen) {  // ascending, so strict < keeps the lowest index on ties
    for (int i : inst.sets[static_cast<std::size_t>(j)]) {
      const std::size_t t = static_cast<std::size_t>(i);
      double d2 = 0.0;
      if (inst.floor) {
        const Vec2 f = inst.floor->points[static_cast<std::size_t>(j)];
        d2 = (targets[t].x - f.x) * (targets[t].x - f.x) + (targets[t].y - f.y) * (targets[t].y - f.y);
      }
      if (covered[t] < 0 || d2 < best_d2[t]) {
        covered[t] = j;
        best_d2[t] = d2;
      }
    }
  }
  std::vector<char> serves(inst.m(), 0);
  for (int j : covered) {
    if (j < 0) throw ContractViolation("assign_nearest: solution does not cover every target");
    serves[static_cast<std::size_t>(j)] = 1;
  }
  std::erase_if(sol.chosen, [&](int j) { return !serves[static_cast<std::size_t>(j)]; });
  sol.covered = std::move(covered);
}

}  // namespace mobiplan
