// Covering LP via its packing dual:
//
//   max sum_i y_i   s.t.  sum_{i in s_j} y_i <= 1  for every set j,  y >= 0.
//
// The slack basis is feasible, so plain primal simplex applies with no
// phase one. At optimality the prices of the set rows are an optimal x for
// the covering LP. Rows of duplicate or dominated sets are implied by a
// superset row and are dropped; their x stays 0. An optimal covering x
// never exceeds 1 (lowering any x_j > 1 to 1 stays feasible and is
// cheaper), so the upper bounds need no explicit rows.

#include <algorithm>
#include <cmath>
#include <vector>

#include "mobiplan/scp.hpp"

namespace mobiplan {

namespace {

constexpr double kPivotEps = 1e-10;

// Indices of distinct non-empty sets not contained in another kept set.
std::vector<int> maximal_sets(const ScpInstance& inst) {
  std::vector<int> order;
  for (std::size_t j = 0; j < inst.m(); ++j) {
    if (!inst.sets[j].empty()) order.push_back(static_cast<int>(j));
  }
  // Larger sets first so a subset always meets its superset earlier.
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return inst.sets[static_cast<std::size_t>(a)].size() > inst.sets[static_cast<std::size_t>(b)].size();
  });
  std::vector<int> kept;
  for (int j : order) {
    const auto& s = inst.sets[static_cast<std::size_t>(j)];
    const bool dominated = std::any_of(kept.begin(), kept.end(), [&](int k) {
      const auto& big = inst.sets[static_cast<std::size_t>(k)];
      return std::includes(big.begin(), big.end(), s.begin(), s.end());
    });
    if (!dominated) kept.push_back(j);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace

LpSolution solve_cover_lp(const ScpInstance& inst, int iteration_cap) {
  for (const auto& s : inst.sets) {
    if (!std::is_sorted(s.begin(), s.end())) throw InvalidInput("lp: sets must be sorted");
  }
  if (!check_feasibility(inst).feasible) {
    throw InfeasibleTask("lp: covering LP is infeasible", check_feasibility(inst).uncovered);
  }
  if (iteration_cap <= 0) iteration_cap = 50 * (inst.n + static_cast<int>(inst.m()));

  const std::vector<int> rows = maximal_sets(inst);
  const std::size_t R = rows.size();
  const std::size_t n = static_cast<std::size_t>(inst.n);
  const std::size_t cols = n + R;  // y variables then slacks
  const std::size_t width = cols + 1;

  // tab[r] = [A_r | I_r | b_r]; obj = reduced profits, obj[cols] = -objective.
  std::vector<double> tab(R * width, 0.0);
  for (std::size_t r = 0; r < R; ++r) {
    double* row = &tab[r * width];
    for (int i : inst.sets[static_cast<std::size_t>(rows[r])]) row[static_cast<std::size_t>(i)] = 1.0;
    row[n + r] = 1.0;
    row[cols] = 1.0;
  }
  std::vector<double> obj(width, 0.0);
  std::fill(obj.begin(), obj.begin() + static_cast<std::ptrdiff_t>(n), 1.0);
  std::vector<std::size_t> basis(R);
  for (std::size_t r = 0; r < R; ++r) basis[r] = n + r;

  LpSolution sol;
  for (;;) {
    // Bland: lowest-index improving column, then lowest basic index on ties.
    std::size_t enter = cols;
    for (std::size_t c = 0; c < cols; ++c) {
      if (obj[c] > kPivotEps) {
        enter = c;
        break;
      }
    }
    if (enter == cols) break;
    if (sol.iterations >= iteration_cap) {
      throw ContractViolation("lp: simplex iteration cap (" + std::to_string(iteration_cap) +
                              ") exceeded");
    }
    std::size_t leave = R;
    double best_ratio = 0.0;
    for (std::size_t r = 0; r < R; ++r) {
      const double a = tab[r * width + enter];
      if (a <= kPivotEps) continue;
      const double ratio = tab[r * width + cols] / a;
      if (leave == R || ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == R) throw ContractViolation("lp: packing dual unbounded");

    double* prow = &tab[leave * width];
    const double inv = 1.0 / prow[enter];
    for (std::size_t c = 0; c < width; ++c) prow[c] *= inv;
    prow[enter] = 1.0;
    for (std::size_t r = 0; r < R; ++r) {
      if (r == leave) continue;
      double* row = &tab[r * width];
      const double f = row[enter];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) row[c] -= f * prow[c];
      row[enter] = 0.0;
    }
    const double f = obj[enter];
    for (std::size_t c = 0; c < width; ++c) obj[c] -= f * prow[c];
    obj[enter] = 0.0;
    basis[leave] = enter;
    ++sol.iterations;
  }

  sol.x.assign(inst.m(), 0.0);
  for (std::size_t r = 0; r < R; ++r) {
    sol.x[static_cast<std::size_t>(rows[r])] = std::clamp(-obj[n + r], 0.0, 1.0);
  }
  sol.objective = -obj[cols];
  return sol;
}

}  // namespace mobiplan
